// Acceptance run: one status line per criterion with its runtime and budget.

#include "linear_parts.hpp"
#include "omega_fixtures.hpp"
#include "property_suites.hpp"
#include "sheaves.hpp"
#include "worked_examples.hpp"

using namespace acceptance;

namespace {

void property_suites(Report& r) {
  const std::vector<std::pair<std::string, void (*)(Report&)>> suites{
      {"(a) R and L homology", double_computations}, {"(b) adjunction", adjunction},
      {"(c) LR resolution", lr_resolution},          {"(d) linear part oracle", linear_part_agreement},
      {"(e) lin of R(G)", linear_part_of_R},         {"(f) reciprocity", reciprocity},
      {"(g) exactness of lin", eventual_exactness},  {"(h) deep syzygies", t_family}};
  for (const auto& [name, run] : suites) {
    Report part;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(part);
    } catch (const std::exception& e) {
      part.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.checks += part.checks;
    for (auto& f : part.failures) r.failures.push_back(name + ": " + f);
    for (auto& d : part.deviations) r.deviate(name + ": " + d);
    for (auto& n : part.notes) r.note(name + ": " + n);
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << name << ": " << part.checks << " checks, " << (part.failures.empty() ? "passed" : "failed") << ", " << secs << " s";
    r.note(os.str());
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "elliptic quartic window and linear monad", 10, elliptic_quartic},
      {2, "Horrocks-Mumford Betti table and Hilbert polynomial", 60, horrocks_mumford},
      {3, "rational normal curves", 30, rational_normal_curves},
      {4, "Tate windows of Ω^p and hook functors", 30, omega_fixtures},
      {5, "randomized property suites", 300, property_suites},
      {6, "Beilinson monads", 120, beilinson_monads},
      {7, "line bundle cohomology", 10, line_bundles},
  };
  const int failed = run_all(criteria, std::cout);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria met")) << '\n';
  return failed ? 1 : 0;
}
