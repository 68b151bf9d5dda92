#pragma once

// Command surface over a loaded program: each command builds what it needs
// from the subject (an S-module or an E-matrix), then renders text or JSON.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bgg/beilinson.hpp"
#include "bgg/dsl.hpp"
#include "bgg/errors.hpp"
#include "bgg/examples.hpp"
#include "bgg/exres.hpp"
#include "bgg/tate.hpp"

namespace bgg::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { Ok = 0, Failure = 1, Usage = 2, ParseFailed = 3, PreconditionFailed = 4, Uncertified = 5, Internal = 6 };

constexpr std::int64_t kDefaultPrime = 32003;
constexpr const char* kPrimeVariable = "BGG_PRIME";

inline std::int64_t default_prime() {
  if (const char* s = std::getenv(kPrimeVariable)) {
    char* end = nullptr;
    const long long p = std::strtoll(s, &end, 10);
    if (end && *end == '\0' && p > 2 && dsl::detail::is_prime(p) && p < (1LL << 31)) return p;
    throw PreconditionError(std::string(kPrimeVariable) + " is not an odd prime below 2^31: " + s);
  }
  return kDefaultPrime;
}

/// Flags of one command, checked against the set the command accepts.
class Args {
 public:
  Args(const dsl::Command& c, std::set<std::string> allowed) : c_(c) {
    allowed.insert("json");
    for (const auto& a : c.args)
      if (!allowed.count(a.flag))
        throw dsl::ParseError(dsl::ErrorKind::Semantic, a.pos, "--" + a.flag, "unknown option for " + c.name);
  }

  bool has(const std::string& f) const { return c_.find(f) != nullptr; }

  std::optional<int> integer(const std::string& f) const {
    const dsl::Arg* a = c_.find(f);
    if (!a) return std::nullopt;
    if (!a->value || a->value->find(':') != std::string::npos) bad(*a, "expects an integer");
    try {
      return std::stoi(*a->value);
    } catch (const std::exception&) {
      bad(*a, "expects an integer");
    }
  }
  int integer(const std::string& f, int fallback) const { return integer(f).value_or(fallback); }

  std::optional<std::pair<int, int>> range(const std::string& f) const {
    const dsl::Arg* a = c_.find(f);
    if (!a) return std::nullopt;
    const auto colon = a->value ? a->value->find(':') : std::string::npos;
    if (colon == std::string::npos) bad(*a, "expects a range a:b");
    const int lo = std::stoi(a->value->substr(0, colon)), hi = std::stoi(a->value->substr(colon + 1));
    if (lo > hi) bad(*a, "range is empty");
    return std::pair{lo, hi};
  }

 private:
  [[noreturn]] void bad(const dsl::Arg& a, const std::string& what) const {
    throw dsl::ParseError(dsl::ErrorKind::Semantic, a.pos, "--" + a.flag, "--" + a.flag + " " + what);
  }
  const dsl::Command& c_;
};

// ---- rendering helpers ----

/// ω_E(a) has its generator in degree v - a.
inline std::string omega_terms(const EFree& F) {
  std::map<int, std::size_t> twist;
  for (int g : F.degrees) ++twist[F.alg.v - g];
  if (twist.empty()) return "0";
  std::string s;
  for (const auto& [a, n] : twist) {
    if (!s.empty()) s += " + ";
    s += "ω";
    if (n != 1) s += "^" + std::to_string(n);
    if (a != 0) s += "(" + std::to_string(a) + ")";
  }
  return s;
}

/// S(a) has its generator in degree -a.
inline std::string s_terms(const SFree& F) {
  std::map<int, std::size_t> twist;
  for (int g : F.degrees) ++twist[-g];
  if (twist.empty()) return "0";
  std::string s;
  for (auto it = twist.rbegin(); it != twist.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "S";
    if (it->second != 1) s += "^" + std::to_string(it->second);
    if (it->first != 0) s += "(" + std::to_string(it->first) + ")";
  }
  return s;
}

template <class Alg>
Json gens_json(const GradedFree<Alg>& F) {
  Json gens = Json::array();
  for (const auto& [g, n] : F.degree_counts()) gens.push_back({{"degree", g}, {"rank", n}});
  return gens;
}

template <class Alg>
Json map_json(const GradedMap<Alg>& f) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.cols(); ++c) row.push_back(f.at(r, c).render());
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Alg>
Json complex_json(const FreeComplex<Alg>& c) {
  Json terms = Json::array();
  for (int i = c.lo; i <= c.hi(); ++i) terms.push_back({{"position", i}, {"gens", gens_json(c.term(i))}});
  Json maps = Json::array();
  for (int i = c.lo; i < c.hi(); ++i) maps.push_back({{"from", i}, {"entries", map_json(c.diff(i))}});
  return {{"terms", terms}, {"maps", maps}};
}

// ---- building the Tate window ----

struct Subject {
  const dsl::Session& s;
  bool is_module() const { return s.subject_is_module(); }
  int v() const { return is_module() ? s.module().v() : s.ematrix().algebra().v; }
};

/// Smallest certified regularity, raising the scan limit step by step.
inline Regularity certified_regularity(const FPModuleS& M, int max_limit) {
  Regularity r;
  for (int limit = M.max_generator_degree() + 1; limit <= max_limit; limit += 2) {
    r = regularity(M, limit);
    if (r.certified) return r;
  }
  return r;
}

inline int truncation(const dsl::Session& s, const Args& a) {
  if (auto d = a.integer("trunc")) return *d;
  const FPModuleS& M = s.module();
  const int limit = a.integer("limit", M.max_generator_degree() + 3 * M.v());
  const Regularity r = certified_regularity(M, limit);
  if (!r.certified) throw UncertifiedError("regularity not certified up to degree " + std::to_string(limit) + ": " + r.note);
  return r.r;
}

inline TateWindow window(const dsl::Session& s, const Args& a, int lo, int hi) {
  lo = a.integer("lo", lo);
  hi = a.integer("hi", hi);
  if (s.subject_is_module()) return tate_from_module(s.module(), truncation(s, a), lo, hi);
  return tate_from_matrix(s.ematrix(), lo, hi, a.integer("at", -1));
}

inline Json certified_json(const TateWindow& t) {
  if (!t.sheaf_certified()) return nullptr;
  return Json::array({t.lo(), t.hi()});
}

inline const std::set<std::string> kWindowFlags{"lo", "hi", "trunc", "limit", "at"};

inline std::set<std::string> with(std::set<std::string> a, std::initializer_list<std::string> more) {
  a.insert(more.begin(), more.end());
  return a;
}

// ---- commands ----

struct Output {
  std::string text;
  Json json;
};

inline Json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

inline Output window_output(const std::string& name, const TateWindow& t) {
  Output o{{}, header(name)};
  std::ostringstream os;
  Json cols = Json::array();
  for (int e = t.lo(); e <= t.hi(); ++e) {
    os << "T^" << e << ": " << omega_terms(t.complex.term(e)) << '\n';
    cols.push_back({{"e", e}, {"gens", gens_json(t.complex.term(e))}});
  }
  if (t.sheaf_certified()) os << "certified: [" << t.lo() << ", " << t.hi() << "]\n";
  else os << "certified: no\n";
  o.text = os.str();
  o.json["columns"] = cols;
  o.json["certified"] = certified_json(t);
  return o;
}

inline Output cmd_tate(const dsl::Session& s) {
  const Args a(s.command, kWindowFlags);
  const int v = Subject{s}.v();
  return window_output("tate", window(s, a, -(v - 1), v - 1));
}

inline Output cmd_dualtate(const dsl::Session& s) {
  const Args a(s.command, kWindowFlags);
  const int v = Subject{s}.v();
  return window_output("dualtate", tate_dual(window(s, a, -(v - 1), v - 1)));
}

inline Output cmd_betti(const dsl::Session& s) {
  const Args a(s.command, kWindowFlags);
  const int v = Subject{s}.v();
  const TateWindow t = window(s, a, -(v - 1), v - 1);
  const BettiTable b = betti_table(t);
  Output o{b.render() + (t.sheaf_certified() ? "certified\n" : "not certified\n"), header("betti")};
  Json entries = Json::array();
  for (const auto& [je, n] : b.entries) entries.push_back({{"strand", je.first}, {"column", je.second}, {"rank", n}});
  o.json["columns"] = b.columns;
  o.json["entries"] = entries;
  o.json["certified"] = certified_json(t);
  return o;
}

inline Output cmd_cohomology(const dsl::Session& s) {
  const Args a(s.command, with(kWindowFlags, {"jrange", "lrange"}));
  const int v = Subject{s}.v();
  const auto [jlo, jhi] = a.range("jrange").value_or(std::pair{0, v - 1});
  const auto [llo, lhi] = a.range("lrange").value_or(std::pair{-v, v});
  const TateWindow t = window(s, a, jlo + llo, jhi + lhi);
  const CohomologyTable c = cohomology_table(t, jlo, jhi, llo, lhi);
  Output o{c.render(), header("cohomology")};
  Json rows = Json::array();
  for (int j = jlo; j <= jhi; ++j) {
    Json row = Json::array();
    for (int l = llo; l <= lhi; ++l) {
      const auto h = c.at(j, l);
      row.push_back(h ? Json(*h) : Json(nullptr));
    }
    rows.push_back({{"j", j}, {"h", row}});
  }
  o.json["twists"] = {llo, lhi};
  o.json["rows"] = rows;
  return o;
}

inline Output cmd_linmonad(const dsl::Session& s) {
  const Args a(s.command, with(kWindowFlags, {"jrange"}));
  const int v = Subject{s}.v();
  const TateWindow t = window(s, a, -v, v);
  const LinearMonad m = linear_monad(t);
  const auto [jlo, jhi] = a.range("jrange").value_or(std::pair{-v, v});
  const MonadCheck check = check_linear_monad(t, m.complex, jlo, jhi);
  std::ostringstream os;
  for (int i = m.complex.lo; i <= m.complex.hi(); ++i) os << "G^" << i << ": " << s_terms(m.complex.term(i)) << '\n';
  os << "homology vs cohomology table in degrees " << jlo << ".." << jhi << ": " << (check.ok ? "agrees" : "differs")
     << " (" << check.compared << " compared, " << check.unknown << " unknown)\n";
  for (const auto& mm : check.mismatches) os << "  " << mm << '\n';
  Output o{os.str(), header("linmonad")};
  o.json["complex"] = complex_json(m.complex);
  o.json["check"] = {{"agrees", check.ok}, {"compared", check.compared}, {"unknown", check.unknown}, {"mismatches", check.mismatches}};
  return o;
}

inline Output cmd_linpart(const dsl::Session& s) {
  EComplex lin;
  std::string what;
  if (s.subject_is_module()) {
    const Args a(s.command, kWindowFlags);
    const int v = s.module().v();
    lin = linear_part(window(s, a, -(v - 1), v - 1).complex);
    what = "linear part of the Tate window";
  } else {
    const Args a(s.command, {"steps"});
    const EMap& phi = s.ematrix();
    const int steps = a.integer("steps", phi.algebra().v + 1);
    if (steps < 1) throw PreconditionError("--steps must be positive");
    lin = linear_part(free_resolution(cokernel_module(phi), steps).complex);
    what = "linear part of the minimal free resolution of coker";
  }
  Output o{what + "\n" + render_complex(lin), header("linpart")};
  o.json["complex"] = complex_json(lin);
  return o;
}

inline Output cmd_localcoh(const dsl::Session& s) {
  const Args a(s.command, {"trunc", "limit", "lo"});
  const FPModuleS& M = s.module();
  const int v = M.v();
  const int d = truncation(s, a);
  const int lo = a.integer("lo", d - v - 2);
  const auto table = local_cohomology_table(M.pieces(std::min(M.min_generator_degree(), d), d + v + 2), d, lo);
  std::ostringstream os;
  Json entries = Json::array();
  os << "module truncated at " << d << ", columns from " << lo << '\n';
  for (const auto& [qk, n] : table) {
    os << "H^" << qk.first << "_m(M_>=" << d << ")_" << qk.second << ": " << n << '\n';
    entries.push_back({{"q", qk.first}, {"degree", qk.second}, {"dim", n}});
  }
  Output o{os.str(), header("localcoh")};
  o.json["truncation"] = d;
  o.json["entries"] = entries;
  return o;
}

inline Json homology_json(const MonadHomology& h) {
  Json dims = Json::array();
  for (const auto& [em, n] : h.dims) dims.push_back({{"position", em.first}, {"degree", em.second}, {"dim", n}});
  return {{"range", {h.mlo, h.mhi}}, {"cutoff", h.cutoff}, {"passed", h.passed}, {"dims", dims}};
}

/// Sections check against M on --range, for module subjects.
template <class Monad>
void monad_homology(const dsl::Session& s, const Args& a, const Monad& monad, Output& o) {
  if (!s.subject_is_module()) return;
  const FPModuleS& M = s.module();
  const int d = truncation(s, a);
  const auto [mlo, mhi] = a.range("range").value_or(std::pair{0, std::max(d, 1) + 2});
  const auto pieces = M.pieces(std::min(M.min_generator_degree(), mlo), mhi);
  const MonadHomology h = monad_homology_check(monad, pieces, mlo, mhi);
  o.text += h.render();
  o.json["homology"] = homology_json(h);
}

inline Output cmd_beilinson1(const dsl::Session& s) {
  const Args a(s.command, with(kWindowFlags, {"range"}));
  const int n = Subject{s}.v() - 1;
  const OmegaComplex om = omega_functor(window(s, a, -n - 1, n + 1));
  Output o{om.render(), header("beilinson1")};
  Json terms = Json::array();
  for (int e = om.complex.lo; e <= om.complex.hi(); ++e)
    for (const auto& [i, k] : om.summands(e)) terms.push_back({{"position", e}, {"omega_index", i}, {"multiplicity", k}});
  Json maps = Json::array();
  for (int e = om.complex.lo; e < om.complex.hi(); ++e) maps.push_back({{"from", e}, {"blocks", map_json(om.complex.diff(e))}});
  o.json["terms"] = terms;
  o.json["maps"] = maps;
  monad_homology(s, a, om, o);
  return o;
}

inline Output cmd_beilinson2(const dsl::Session& s) {
  const Args a(s.command, with(kWindowFlags, {"range"}));
  const int n = Subject{s}.v() - 1;
  const LineBundleMonad b = beilinson_monad2(window(s, a, -n - 1, n + 1));
  Output o{b.render(), header("beilinson2")};
  Json terms = Json::array();
  for (int j = b.complex.lo; j <= b.complex.hi(); ++j)
    for (const auto& [q, k] : b.terms(j)) terms.push_back({{"position", j}, {"twist_q", q}, {"multiplicity", k}});
  Json maps = Json::array();
  for (int j = b.complex.lo; j < b.complex.hi(); ++j) maps.push_back({{"from", j}, {"entries", map_json(b.complex.diff(j))}});
  o.json["terms"] = terms;
  o.json["maps"] = maps;
  monad_homology(s, a, b, o);
  return o;
}

inline Output cmd_regularity(const dsl::Session& s) {
  const Args a(s.command, {"limit"});
  const FPModuleS& M = s.module();
  const int limit = a.integer("limit", M.max_generator_degree() + 3 * M.v());
  const Regularity r = certified_regularity(M, limit);
  if (!r.certified) throw UncertifiedError("regularity not certified up to degree " + std::to_string(limit) + ": " + r.note);
  Output o{"regularity " + std::to_string(r.r) + "\n", header("regularity")};
  o.json["regularity"] = r.r;
  o.json["certified"] = true;
  return o;
}

inline Output run_command(const dsl::Session& s) {
  using Fn = Output (*)(const dsl::Session&);
  static const std::map<std::string, Fn> table{
      {"tate", cmd_tate},           {"cohomology", cmd_cohomology}, {"betti", cmd_betti},
      {"linmonad", cmd_linmonad},   {"linpart", cmd_linpart},       {"localcoh", cmd_localcoh},
      {"beilinson1", cmd_beilinson1}, {"beilinson2", cmd_beilinson2}, {"dualtate", cmd_dualtate},
      {"regularity", cmd_regularity}};
  auto it = table.find(s.command.name);
  if (it == table.end()) throw dsl::ParseError(dsl::ErrorKind::Semantic, s.command.pos, s.command.name, "unknown command");
  return it->second(s);
}

/// The program's command, or the given one when not empty.
inline dsl::Session session(const std::string& program, const std::string& command_line = {}) {
  dsl::Program prog = dsl::parse(program);
  if (!command_line.empty()) prog.command = dsl::parse_command(command_line);
  return dsl::load(prog);
}

// ---- example programs ----

struct ExampleParams {
  std::optional<int> i, v, j, d, k;
  std::int64_t lambda = 1;
  std::string over = "E";
};

inline int need(std::optional<int> x, int fallback) { return x.value_or(fallback); }

/// DSL text for a canned example, ending in the given command.
inline std::string example_program(const std::string& name, const ExampleParams& p, std::int64_t prime,
                                   const std::string& then = "betti") {
  ScopedPrime scope(static_cast<std::uint32_t>(prime));
  auto module_program = [&](const FPModuleS& M, const std::string& mat) {
    return dsl::ring_text("S", 'S', prime, M.v()) + dsl::matrix_text(mat, M.presentation()) + "module M = coker " + mat + ";\n";
  };
  std::string text;
  if (name == "omega") {
    const int v = need(p.v, 4), i = need(p.i, 1);
    if (v < 2 || v > 7 || i < 0 || i >= v) throw PreconditionError("omega: need 2 <= v <= 7 and 0 <= i < v");
    text = module_program(examples::omega_module(v, i), "koszul");
  } else if (name == "powers") {
    const int v = need(p.v, 4), j = need(p.j, 1);
    if (v < 1 || v > 7 || j < 0 || j > v) throw PreconditionError("powers: need 1 <= v <= 7 and 0 <= j <= v");
    if (p.over == "E") {
      const auto res = free_resolution(examples::maximal_ideal_power_E(v, j), 1);
      text = dsl::ring_text("E", 'E', prime, v) + dsl::matrix_text("pres", res.complex.diff(-1));
    } else if (p.over == "S") {
      text = module_program(present(examples::maximal_ideal_power_S(v, j, j + 2), j + 2), "pres");
    } else {
      throw PreconditionError("powers: --over is S or E");
    }
  } else if (name == "rnc") {
    const int d = need(p.d, 4), k = need(p.k, 1);
    if (d < 2 || d > 6 || k < -1 || k > d - 2) throw PreconditionError("rnc: need 2 <= d <= 6 and -1 <= k <= d - 2");
    text = module_program(present(examples::rnc(d, k, 4), 4), "pres");
  } else if (name == "elliptic") {
    text = module_program(examples::elliptic_quartic(p.lambda), "quadrics");
  } else if (name == "hm") {
    text = dsl::ring_text("E", 'E', prime, 5) + dsl::matrix_text("phi", examples::horrocks_mumford());
  } else {
    throw PreconditionError("unknown example '" + name + "' (omega, powers, rnc, elliptic, hm)");
  }
  return text + dsl::render(dsl::parse_command(then)) + "\n";
}

}  // namespace bgg::cli
