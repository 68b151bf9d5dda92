#include <gtest/gtest.h>

#include <random>

#include "bgg/dsl.hpp"
#include "bgg/examples.hpp"

using namespace bgg;
using namespace bgg::dsl;
using namespace bgg::examples;

namespace {

const char* kQuadrics = R"(# two quadrics in P^3, lambda = 1
ring S S p=32003 v=4;
matrix q [
  [x1*x3+x2^2+x0^2, x0*x2+x3^2+x1^2]
] rowdegs [0];
module M = coker q;
tate --lo -3 --hi 3
)";

const char* kHorrocksMumford = R"(ring E E p=32003 v=5;
matrix phi [
  [e1*e4, e2*e0, e3*e1, e4*e2, e0*e3],
  [e2*e3, e3*e4, e4*e0, e0*e1, e1*e2]
] rowdegs [3 3];
betti
)";

ParseError error_of(const std::string& src) {
  try {
    load(parse(src));
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << src;
  return ParseError(ErrorKind::Syntax, {}, "", "");
}

}  // namespace

TEST(Dsl, QuadricsFile) {
  const Session s = load(parse(kQuadrics));
  const FPModuleS& M = s.module();
  EXPECT_EQ(M.generators().degrees, std::vector<int>{0});
  EXPECT_EQ(M.presentation().source().degrees, (std::vector<int>{2, 2}));
  EXPECT_EQ(M.pieces(0, 6).dims, elliptic_quartic(1).pieces(0, 6).dims);
  EXPECT_EQ(s.command.name, "tate");
  EXPECT_EQ(s.command.find("lo")->value, "-3");
}

TEST(Dsl, HorrocksMumfordFile) {
  const Session s = load(parse(kHorrocksMumford));
  const EMap& phi = s.ematrix();
  EXPECT_EQ(phi.rows(), 2u);
  EXPECT_EQ(phi.cols(), 5u);
  EXPECT_EQ(phi.source().degrees, std::vector<int>(5, 1));
  const EMap hm = horrocks_mumford();
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(phi.at(r, c), hm.at(r, c)) << r << "," << c;
  EXPECT_EQ(phi.at(0, 1).render(), "-e0*e2");
}

TEST(Dsl, EmptyProgramHasNoCommand) {
  for (const std::string src : {"", "  \n# nothing\n"}) {
    const auto e = error_of(src);
    EXPECT_EQ(e.kind, ErrorKind::Syntax);
    EXPECT_NE(std::string(e.what()).find("no command"), std::string::npos);
  }
}

TEST(Dsl, ErrorsCarryKindAndPosition) {
  auto e = error_of("ring S S p=7 v=2;\nmatrix a [[x0 $ x1]] rowdegs [0];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Lexical);
  EXPECT_EQ(e.pos, (Pos{2, 15}));
  EXPECT_EQ(e.token, "$");

  e = error_of("ring S S p=7 v=2\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Syntax);
  EXPECT_EQ(e.pos, (Pos{2, 1}));
  EXPECT_EQ(e.token, "betti");

  e = error_of("ring S S p=7 v=2;\nmatrix a [[x0^2+x1]] rowdegs [0];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Homogeneity);
  EXPECT_EQ(e.pos, (Pos{2, 12}));

  e = error_of("ring S S p=7 v=2;\nmatrix a [[x0], [x1^2]] rowdegs [0 0];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Homogeneity);
  EXPECT_EQ(e.token, "x1^2");

  e = error_of("ring E E p=7 v=2;\nmatrix a [[x0]] rowdegs [0];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  e = error_of("ring S S p=7 v=2;\nmatrix a [[x2]] rowdegs [0];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  EXPECT_EQ(e.token, "x2");
  e = error_of("ring S S p=7 v=2;\nmatrix a [[x0]] rowdegs [0 1];\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  e = error_of("ring S S p=7 v=2;\nmodule M = coker b;\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  EXPECT_EQ(e.token, "b");
  e = error_of("ring S S p=7 v=2;\nring E E p=11 v=2;\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  e = error_of("ring S S p=9 v=2;\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  e = error_of("ring E E p=7 v=2;\nmatrix a [[e0]] rowdegs [0];\nmodule M = coker a;\nbetti");
  EXPECT_EQ(e.kind, ErrorKind::Semantic);
  e = error_of("ring S S p=7 v=2;\nbetti --lo 3 extra");
  EXPECT_EQ(e.kind, ErrorKind::Syntax);
  EXPECT_EQ(e.token, "extra");
}

TEST(Dsl, CoefficientsAndSigns) {
  ScopedPrime guard(32003);
  const Session s = load(parse("ring E E p=7 v=3;\nmatrix a [[8*e0*e1-e1*e0+13*e2*e1, 0]] rowdegs [0];\nbetti"));
  const EMap& a = s.ematrix();
  EXPECT_EQ(a.at(0, 0).render(), "e1*e2+2*e0*e1");
  EXPECT_EQ(a.source().degrees, (std::vector<int>{-2, 0}));
  EXPECT_TRUE(load(parse("ring E E p=7 v=2;\nmatrix a [[e0*e0]] rowdegs [0];\nbetti")).ematrix().at(0, 0).is_zero());
}

TEST(Dsl, Commands) {
  const Command c = parse_command("cohomology --jrange 0:3 --lrange -4:-1 --json");
  EXPECT_EQ(c.name, "cohomology");
  ASSERT_EQ(c.args.size(), 3u);
  EXPECT_EQ(c.args[0].value, "0:3");
  EXPECT_EQ(c.args[1].value, "-4:-1");
  EXPECT_FALSE(c.args[2].value);
  EXPECT_EQ(render(c), "cohomology --jrange 0:3 --lrange -4:-1 --json");
}

TEST(Dsl, CanonicalTextRoundTrips) {
  ScopedPrime guard(32003);
  const std::string canonical = std::string(kQuadrics).substr(std::string(kQuadrics).find('\n') + 1);
  EXPECT_EQ(render(parse(canonical)), canonical);
  EXPECT_EQ(render(parse(kHorrocksMumford)), kHorrocksMumford);
  const Program messy = parse("ring S  S p=7 v=2 ; matrix a[[ x0 ,-3*x1],[+x1^2,x0*x1 ]]rowdegs[1 0];module M=coker a;tate--lo -2;");
  EXPECT_EQ(parse(render(messy)), messy);
}

TEST(Dsl, ValuesRoundTrip) {
  ScopedPrime guard(32003);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const bool ext = trial % 2;
    const int v = 2 + trial % 3;
    std::uniform_int_distribution<int> coin(0, 3), coef(-5, 5);
    std::string text;
    if (ext) {
      const ExteriorAlgebra E(v);
      EMap f(EFree(E, {1, 2, 2}), EFree(E, {2, 3}));
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c)
          for (auto m : E.basis(f.entry_degree(r, c)))
            if (coin(rng) == 0) f.at(r, c) += ExtPoly::monomial(E, m, Scalar(coef(rng)));
      text = ring_text("E", 'E', 32003, v) + matrix_text("f", f) + "betti\n";
      const EMap g = load(parse(text)).ematrix();
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g.at(r, c), f.at(r, c));
    } else {
      const SymmetricAlgebra S(v);
      SMap f(SFree(S, {2, 3}), SFree(S, {0, 1}));
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          for (auto m : S.basis(f.entry_degree(r, c)))
            if (coin(rng) == 0) f.at(r, c) += SymPoly::monomial(S, m, Scalar(coef(rng)));
      text = ring_text("S", 'S', 32003, v) + matrix_text("f", f) + "module M = coker f;\nbetti\n";
      const SMap g = load(parse(text)).module().presentation();
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          if (!f.at(r, c).is_zero()) {
            EXPECT_EQ(g.at(r, c), f.at(r, c));
          }
    }
    EXPECT_EQ(render(parse(text)), text);
  }
}
