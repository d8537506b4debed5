#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mckay3/chartab.hpp"
#include "mckay3/weyl.hpp"

namespace mckay3 {

// Dense univariate polynomial, coefficient k of t^k.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> c);
  static UniPoly monomial(int k, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational operator[](int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  // exact division by a monic divisor; false if the remainder is nonzero
  bool divide_exact(const UniPoly& d, UniPoly& q) const;

  std::string str(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Sparse bivariate polynomial, (deg_t, deg_u) -> coefficient.
class BiPoly {
 public:
  using Key = std::pair<int, int>;
  BiPoly() = default;
  static BiPoly constant(const Rational& c);
  static BiPoly t_poly(const UniPoly& p);
  static BiPoly u_poly(const UniPoly& p);

  const std::map<Key, Rational>& terms() const { return m_; }
  Rational coeff(int a, int b) const;
  void add(int a, int b, const Rational& c);
  bool is_zero() const { return m_.empty(); }
  bool is_integral() const;
  int deg_t() const;
  int deg_u() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const Rational& c) const;
  bool operator==(const BiPoly& o) const { return m_ == o.m_; }
  bool operator!=(const BiPoly& o) const { return !(*this == o); }

  BiPoly swapped() const;  // f(u, t)
  // exact division by a monic polynomial in t (or u); false if not divisible
  bool divide_t(const UniPoly& d, BiPoly& q) const;
  bool divide_u(const UniPoly& d, BiPoly& q) const;
  UniPoly at_u0() const;  // f(t, 0)
  UniPoly at_t0() const;  // f(0, u) as a polynomial in u

  std::string str() const;

 private:
  std::map<Key, Rational> m_;
};

// Parses sums/products of integers, t, u, powers and parentheses, e.g. "(t^2+1)(u^2+1)-2t^3u".
BiPoly parse_poly(const std::string& text);

UniPoly cyclotomic(long d);

// prod_d Phi_d(t)^{e_d}
struct CycloDenominator {
  std::map<long, int> exps;

  UniPoly expand() const;
  int degree() const;
  std::string str(char var = 't') const;
  bool operator==(const CycloDenominator& o) const { return exps == o.exps; }
};

// P_i = numerators[i] / (den_t(t) den_u(u)).  For SL2 the series is in t alone and den_u is empty.
struct RationalBranchingSeries {
  int dim = 3;
  std::vector<BiPoly> numerators;  // (1 - tu) kept inside for SL3
  CycloDenominator den_t, den_u;

  // numerators with the (1 - tu) factor removed (SL3 only)
  std::vector<BiPoly> stripped() const;
};

// Rational function in t with a cyclotomic denominator.
struct CycloRational {
  UniPoly num;
  CycloDenominator den;
};

RationalBranchingSeries closed_form(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T);

// Coefficients of t^m u^n for m + n <= level (SL2: n = 0 .. level in the (0, n) slots).
MultTable expand(const RationalBranchingSeries& S, int level);

CycloRational molien(const FiniteMatrixGroup& G, const ConjClassSet& C);
// P_i(t, 0) as a rational function
CycloRational t_section(const RationalBranchingSeries& S, std::size_t i);

// a/b == c/d as rational functions of t
bool same_rational(const UniPoly& a, const UniPoly& b, const UniPoly& c, const UniPoly& d);
bool same_rational(const BiPoly& a, const BiPoly& b, const BiPoly& c, const BiPoly& d);

// Rewrites num over a larger cyclotomic denominator; false if it does not divide.
bool rescale(const CycloRational& f, const CycloDenominator& target, UniPoly& num);

// Splits unit * prod Phi_d^e off p; false if p is not such a product.
bool factor_cyclotomic(const UniPoly& p, CycloDenominator& d, Rational& unit);

// SL2 numerators written over den (e.g. "(1-t^12)(1-t^20)"); empty if den is not a multiple of S.den_t.
std::vector<UniPoly> numerators_over(const RationalBranchingSeries& S, const UniPoly& den);

std::string pretty(const RationalBranchingSeries& S);
nlohmann::json to_json(const RationalBranchingSeries& S);
nlohmann::json to_json(const CycloDenominator& d);
nlohmann::json to_json(const CycloRational& f);

}  // namespace mckay3
