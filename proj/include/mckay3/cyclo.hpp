#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace mckay3 {

using Rational = mpq_class;
using BigInt = mpz_class;

// Exact element of Q(zeta_n).
//
// Storage is the canonical form: a sorted list of (exponent, coefficient)
// pairs over the basis of Q(zeta_n) obtained as the tensor product of the
// power bases {zeta_q^r : 0 <= r < phi(q)} of the prime-power factors q of n.
// Under the identification zeta_q = zeta_n^(n/q) a basis element is a single
// power zeta_n^k, so the stored exponents are ordinary exponents of zeta_n.
// The conductor is always minimal; zero and rationals have conductor 1.
class CycloNum {
 public:
  using Term = std::pair<std::int64_t, Rational>;

  CycloNum() = default;
  CycloNum(long v);  // NOLINT(google-explicit-constructor)
  CycloNum(const Rational& q);  // NOLINT(google-explicit-constructor)

  // zeta_n^k, k reduced mod n.
  static CycloNum zeta(std::int64_t n, std::int64_t k = 1);

  // Reduces arbitrary (exponent, coefficient) data at conductor n.
  static CycloNum from_terms(std::int64_t n, std::vector<Term> terms);

  std::int64_t conductor() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }

  bool is_zero() const { return t_.empty(); }
  bool is_rational() const { return n_ == 1; }
  bool is_integer() const;
  Rational to_rational() const;  // throws DomainError if not rational

  CycloNum conj() const;
  // Galois automorphism zeta -> zeta^a; a must be coprime to the conductor.
  CycloNum galois(std::int64_t a) const;
  CycloNum inverse() const;

  std::complex<double> embed() const;
  std::string key() const;
  std::string str() const;  // human readable, e.g. "-z3^2+1/2"

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

 private:
  std::int64_t n_ = 1;
  std::vector<Term> t_;
};

CycloNum root_of_unity(std::int64_t n, std::int64_t k);

enum class Op { Add, Sub, Mul, Div };
CycloNum arith(const CycloNum& a, const CycloNum& b, Op op);

inline CycloNum conj(const CycloNum& a) { return a.conj(); }
inline std::complex<double> embed(const CycloNum& a) { return a.embed(); }

nlohmann::json to_json(const CycloNum& a);
CycloNum cyclo_from_json(const nlohmann::json& j);

// Parses sums of terms like "3/2", "-z3^2", "2*z9^4", "z21^5", "i", "s2"
// (i = zeta_4, s2/s3/s5 = positive square roots).
CycloNum parse_cyclo(std::string_view text);

// Fixed-conductor view of Q(zeta_N) used by the dense inner loops.
class CycloBasis {
 public:
  explicit CycloBasis(std::int64_t N);

  std::int64_t conductor() const { return N_; }
  std::size_t dim() const { return exps_.size(); }
  const std::vector<std::int64_t>& exponents() const { return exps_; }
  int index_of(std::int64_t k) const { return index_[static_cast<std::size_t>(k)]; }

  // zeta_N^s written in the basis: (index, sign) pairs.
  const std::vector<std::pair<int, int>>& expansion(std::int64_t s) const;

  // Coordinate of the basis element 1 in zeta_N^s (0 or +-1).
  int unit_coord(std::int64_t s) const { return unit_[static_cast<std::size_t>(s)]; }

  std::vector<Rational> coords(const CycloNum& a) const;
  CycloNum from_coords(const std::vector<Rational>& c) const;

 private:
  std::int64_t N_;
  std::vector<std::int64_t> exps_;
  std::vector<int> index_;
  std::vector<std::vector<std::pair<int, int>>> expand_;
  std::vector<int> unit_;
};

}  // namespace mckay3
