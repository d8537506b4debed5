#include "doctest.h"
#include "mckay3/errors.hpp"
#include "mckay3/presets.hpp"
#include "mckay3/series.hpp"

using namespace mckay3;

namespace {

struct Built {
  FiniteMatrixGroup G;
  ConjClassSet C;
  CharacterTable T;
  McKayData M;
  RationalBranchingSeries S;
};

Built run_gens(const std::vector<GroupElement>& gens) {
  Built b;
  b.G = enumerate(gens);
  b.C = conjugacy_classes(b.G);
  b.T = character_table(b.G, b.C);
  b.M = mckay_matrices(b.T, natural_character(b.G, b.C));
  b.S = closed_form(b.G, b.C, b.T);
  return b;
}

Built run(const std::string& name, const Params& p = {}) { return run_gens(build(name, p).generators); }

UniPoly uni(const std::string& s) { return parse_poly(s).at_u0(); }

void check_series(const Built& b, int level) {
  const auto& S = b.S;
  for (const auto& n : S.numerators) CHECK(n.is_integral());
  CHECK(expand(S, level) == mults_recursive(b.M, level));
  if (S.dim == 3) {
    CHECK(S.den_t == S.den_u);
    auto cp = b.T.conj_perm();
    for (std::size_t i = 0; i < S.numerators.size(); ++i)
      CHECK(S.numerators[static_cast<std::size_t>(cp[i])].swapped() == S.numerators[i]);
  }
  auto m = molien(b.G, b.C);
  auto s = t_section(S, 0);
  CHECK(m.num == s.num);
  CHECK(m.den == s.den);
}

}  // namespace

TEST_CASE("polynomial parser") {
  BiPoly p = parse_poly("(t^2+1)(u^2+1)-2t^3u");
  CHECK(p.coeff(2, 2) == 1);
  CHECK(p.coeff(0, 0) == 1);
  CHECK(p.coeff(3, 1) == -2);
  CHECK(p.deg_t() == 3);
  CHECK(parse_poly(p.str()) == p);
  CHECK(parse_poly("-t^18 + t^15 - 1").coeff(18, 0) == -1);
  CHECK(parse_poly("3*t*u - 1/2").coeff(0, 0) == Rational(-1, 2));
  CHECK(parse_poly("2(1-t)^2").coeff(1, 0) == -4);
  CHECK_THROWS_AS(parse_poly("t^"), DomainError);
  CHECK_THROWS_AS(parse_poly("(t+1"), DomainError);
  CHECK_THROWS_AS(parse_poly("x"), DomainError);
  CHECK(uni("t^12+1").str() == "t^12+1");
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == uni("t-1"));
  CHECK(cyclotomic(6) == uni("t^2-t+1"));
  CHECK(cyclotomic(12) == uni("t^4-t^2+1"));
  CycloDenominator d;
  d.exps = {{1, 1}, {2, 1}, {3, 1}, {6, 1}};
  CHECK(d.expand() == uni("t^6-1"));
  CHECK(d.degree() == 6);
  UniPoly q;
  CHECK(uni("t^6-1").divide_exact(cyclotomic(3), q));
  CHECK(q == uni("t^4-t^3+t-1"));
  CHECK_FALSE(uni("t^2+1").divide_exact(cyclotomic(1), q));
}

TEST_CASE("trivial group in SL3") {
  auto b = run_gens({GroupElement::identity(3)});
  REQUIRE(b.S.numerators.size() == 1);
  BiPoly D = BiPoly::t_poly(b.S.den_t.expand()) * BiPoly::u_poly(b.S.den_u.expand());
  CHECK(same_rational(b.S.numerators[0], D, parse_poly("1-tu"), parse_poly("(1-t)^3(1-u)^3")));
  check_series(b, 8);
}

TEST_CASE("binary tetrahedral series") {
  auto b = run("E6");
  REQUIRE(b.S.dim == 2);
  UniPoly D = b.S.den_t.expand();
  CHECK(same_rational(b.S.numerators[0].at_u0(), D, uni("t^12+1"), uni("(1-t^6)(1-t^8)")));
  check_series(b, 24);
}

TEST_CASE("icosahedral Molien series") {
  auto b = run("H");
  auto m = molien(b.G, b.C);
  CHECK(same_rational(m.num, m.den.expand(), uni("1+t^15"), uni("(1-t^2)(1-t^6)(1-t^10)")));
  check_series(b, 12);
}

TEST_CASE("series agree with the recurrences") {
  check_series(run("A1", {{"j", 5}}), 15);
  check_series(run("A2", {{"j1", 3}, {"j2", 2}}), 12);
  check_series(run("BDa", {{"q", 2}, {"n", 3}}), 12);
  check_series(run("C", {{"m", 3}}), 12);
  check_series(run("D_example"), 12);
  check_series(run("D_binary", {{"n", 5}}), 30);
  check_series(run("E7"), 30);
}

TEST_CASE("rescale and json") {
  CycloRational f{uni("1+t^2"), {}};
  f.den.exps = {{1, 1}, {2, 1}};
  CycloDenominator target;
  target.exps = {{1, 1}, {2, 1}, {4, 1}};
  UniPoly n;
  REQUIRE(rescale(f, target, n));
  CHECK(n == uni("(1+t^2)^2"));
  CycloDenominator small;
  small.exps = {{1, 1}};
  CHECK_FALSE(rescale(f, small, n));
  auto j = to_json(f);
  CHECK(j["denominator"]["4"].is_null());
  CHECK(j["numerator"]["2"] == 1);
}
