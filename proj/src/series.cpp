#include "mckay3/series.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "mckay3/errors.hpp"
#include "mckay3/ntheory.hpp"

namespace mckay3 {

// ---------- UniPoly ----------

UniPoly::UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

UniPoly UniPoly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(k + 1));
  v[static_cast<std::size_t>(k)] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(k)];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[static_cast<int>(i)] + o[static_cast<int>(i)];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[static_cast<int>(i)] - o[static_cast<int>(i)];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

bool UniPoly::divide_exact(const UniPoly& d, UniPoly& q) const {
  if (d.is_zero() || d.c_.back() != 1) throw DomainError("divisor must be monic");
  if (is_zero()) {
    q = {};
    return true;
  }
  if (degree() < d.degree()) return false;
  std::vector<Rational> r = c_;
  std::vector<Rational> out(static_cast<std::size_t>(degree() - d.degree() + 1));
  const std::size_t dd = static_cast<std::size_t>(d.degree());
  for (std::size_t k = out.size(); k-- > 0;) {
    Rational lead = r[k + dd];
    out[k] = lead;
    if (lead != 0)
      for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= lead * d.c_[j];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  q = UniPoly(std::move(out));
  return true;
}

namespace {

void put_term(std::ostringstream& os, const Rational& c, const std::string& mono, bool first) {
  Rational a = abs(c);
  if (c < 0)
    os << "-";
  else if (!first)
    os << "+";
  if (mono.empty())
    os << a.get_str();
  else if (a != 1)
    os << a.get_str() << mono;
  else
    os << mono;
}

std::string power(char v, int k) {
  if (k == 0) return "";
  std::string s(1, v);
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

}  // namespace

std::string UniPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    put_term(os, c_[k], power(var, static_cast<int>(k)), first);
    first = false;
  }
  return os.str();
}

// ---------- BiPoly ----------

BiPoly BiPoly::constant(const Rational& c) {
  BiPoly p;
  p.add(0, 0, c);
  return p;
}

BiPoly BiPoly::t_poly(const UniPoly& q) {
  BiPoly p;
  for (int k = 0; k <= q.degree(); ++k) p.add(k, 0, q[k]);
  return p;
}

BiPoly BiPoly::u_poly(const UniPoly& q) {
  BiPoly p;
  for (int k = 0; k <= q.degree(); ++k) p.add(0, k, q[k]);
  return p;
}

Rational BiPoly::coeff(int a, int b) const {
  auto it = m_.find({a, b});
  return it == m_.end() ? Rational(0) : it->second;
}

void BiPoly::add(int a, int b, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = m_.emplace(Key{a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) m_.erase(it);
  }
}

bool BiPoly::is_integral() const {
  return std::all_of(m_.begin(), m_.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

int BiPoly::deg_t() const {
  int d = -1;
  for (const auto& kv : m_) d = std::max(d, kv.first.first);
  return d;
}

int BiPoly::deg_u() const {
  int d = -1;
  for (const auto& kv : m_) d = std::max(d, kv.first.second);
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [k, c] : o.m_) r.add(k.first, k.second, c);
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [k, c] : o.m_) r.add(k.first, k.second, -c);
  return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [k1, c1] : m_)
    for (const auto& [k2, c2] : o.m_) r.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

BiPoly BiPoly::operator*(const Rational& c) const {
  BiPoly r;
  if (c == 0) return r;
  for (const auto& [k, v] : m_) r.m_.emplace(k, v * c);
  return r;
}

BiPoly BiPoly::swapped() const {
  BiPoly r;
  for (const auto& [k, c] : m_) r.m_.emplace(Key{k.second, k.first}, c);
  return r;
}

bool BiPoly::divide_t(const UniPoly& d, BiPoly& q) const {
  std::map<int, std::vector<Rational>> by_u;
  const int dt = deg_t();
  for (const auto& [k, c] : m_) {
    auto& v = by_u[k.second];
    if (v.empty()) v.resize(static_cast<std::size_t>(dt + 1));
    v[static_cast<std::size_t>(k.first)] = c;
  }
  BiPoly r;
  for (auto& [b, v] : by_u) {
    UniPoly part(std::move(v)), quo;
    if (!part.divide_exact(d, quo)) return false;
    for (int a = 0; a <= quo.degree(); ++a) r.add(a, b, quo[a]);
  }
  q = std::move(r);
  return true;
}

bool BiPoly::divide_u(const UniPoly& d, BiPoly& q) const {
  BiPoly s;
  if (!swapped().divide_t(d, s)) return false;
  q = s.swapped();
  return true;
}

UniPoly BiPoly::at_u0() const {
  std::vector<Rational> v(static_cast<std::size_t>(std::max(deg_t() + 1, 0)));
  for (const auto& [k, c] : m_)
    if (k.second == 0) v[static_cast<std::size_t>(k.first)] = c;
  return UniPoly(std::move(v));
}

UniPoly BiPoly::at_t0() const { return swapped().at_u0(); }

std::string BiPoly::str() const {
  if (m_.empty()) return "0";
  std::vector<std::pair<Key, Rational>> v(m_.begin(), m_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    int sx = x.first.first + x.first.second, sy = y.first.first + y.first.second;
    if (sx != sy) return sx > sy;
    return x.first.first > y.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    put_term(os, c, power('t', k.first) + power('u', k.second), first);
    first = false;
  }
  return os.str();
}

// ---------- parser ----------

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  BiPoly parse() {
    BiPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("polynomial parse error at " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  BiPoly expr() {
    BiPoly acc;
    bool first = true;
    for (;;) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        break;
      }
      BiPoly t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
    }
    return acc;
  }

  bool starts_factor(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'u' || c == '('; }

  BiPoly term() {
    if (!starts_factor(peek())) fail("expected a term");
    BiPoly p = BiPoly::constant(1);
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        c = peek();
        if (!starts_factor(c)) fail("expected a factor after '*'");
      }
      if (!starts_factor(c)) break;
      p = p * factor();
    }
    return p;
  }

  long integer() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected an integer");
    if (i_ - st > 18) fail("integer too long");
    return std::stol(s_.substr(st, i_ - st));
  }

  BiPoly factor() {
    char c = peek();
    BiPoly base;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Rational q(s_.substr(st, i_ - st));
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        long den = integer();
        if (den == 0) fail("zero denominator");
        q /= den;
      }
      return BiPoly::constant(q);
    }
    if (c == 't' || c == 'u') {
      ++i_;
      base.add(c == 't' ? 1 : 0, c == 'u' ? 1 : 0, 1);
    } else {
      ++i_;
      base = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
    }
    if (peek() == '^') {
      ++i_;
      long k = integer();
      BiPoly r = BiPoly::constant(1);
      for (long j = 0; j < k; ++j) r = r * base;
      return r;
    }
    return base;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

BiPoly parse_poly(const std::string& text) { return PolyParser(text).parse(); }

// ---------- cyclotomic denominators ----------

UniPoly cyclotomic(long d) {
  std::vector<Rational> c;
  for (auto x : nt::cyclotomic_poly(d)) c.emplace_back(static_cast<long>(x));
  return UniPoly(std::move(c));
}

UniPoly CycloDenominator::expand() const {
  UniPoly p = UniPoly::monomial(0);
  for (const auto& [d, e] : exps) {
    UniPoly f = cyclotomic(d);
    for (int k = 0; k < e; ++k) p = p * f;
  }
  return p;
}

int CycloDenominator::degree() const {
  int s = 0;
  for (const auto& [d, e] : exps) s += static_cast<int>(nt::euler_phi(d)) * e;
  return s;
}

std::string CycloDenominator::str(char var) const {
  std::string s;
  for (const auto& [d, e] : exps) {
    if (e == 0) continue;
    s += "(" + cyclotomic(d).str(var) + ")";
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::vector<BiPoly> RationalBranchingSeries::stripped() const {
  if (dim == 2) return numerators;
  BiPoly one_minus_tu = BiPoly::constant(1);
  one_minus_tu.add(1, 1, -1);
  std::vector<BiPoly> out;
  for (const auto& n : numerators) {
    // divide by 1 - tu: peel along the diagonal from the lowest t degree
    BiPoly rem = n, q;
    while (!rem.is_zero()) {
      auto [k, c] = *rem.terms().begin();
      q.add(k.first, k.second, c);
      BiPoly step;
      step.add(k.first, k.second, c);
      rem = rem - step * one_minus_tu;
    }
    out.push_back(std::move(q));
  }
  return out;
}

// ---------- modular assembly ----------

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 powmod(u64 a, u64 k, u64 p) {
  u64 r = 1;
  a %= p;
  while (k) {
    if (k & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    k >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// element of exact order e in F_p^*
u64 root_of_order(u64 e, u64 p) {
  auto qs = nt::factor(static_cast<std::int64_t>(p - 1));
  for (u64 g = 2; g < p; ++g) {
    bool prim = true;
    for (auto [q, k] : qs)
      if (powmod(g, (p - 1) / static_cast<u64>(q), p) == 1) {
        prim = false;
        break;
      }
    if (prim) return powmod(g, (p - 1) / e, p);
  }
  throw ConsistencyError("no primitive root");
}

u64 to_fp(const Rational& q, u64 p) {
  mpz_class r = q.get_num() % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  u64 v = r.get_ui();
  if (q.get_den() != 1) {
    mpz_class d = q.get_den() % static_cast<unsigned long>(p);
    v = mulmod(v, powmod(d.get_ui(), p - 2, p), p);
  }
  return v;
}

// image of c under zeta_e -> wpow[1]
u64 to_fp(const CycloNum& c, long e, const std::vector<u64>& wpow, u64 p) {
  const long step = e / c.conductor();
  u64 s = 0;
  for (const auto& [k, q] : c.terms()) s = (s + mulmod(to_fp(q, p), wpow[static_cast<std::size_t>(k * step % e)], p)) % p;
  return s;
}

long root_order(long a, long e) { return e / std::gcd(nt::mod(a, e), e); }

struct Assembly {
  long e = 1;
  long order = 1;
  bool two_vars = false;
  // per class group (identical eigenvalue multisets)
  std::vector<std::vector<long>> roots;   // exponents of zeta_e, t side
  std::vector<std::vector<CycloNum>> coef;  // [output][group], already weighted by class sizes
};

struct Assembled {
  std::map<long, int> et, eu;
  std::vector<BiPoly> M;  // integral, over prod Phi_d(t)^et prod Phi_d(u)^eu
};

std::map<long, int> exponent_profile(const std::vector<std::vector<long>>& roots, long e) {
  std::map<long, int> out;
  for (const auto& r : roots) {
    std::map<long, int> cnt;
    for (long a : r) ++cnt[nt::mod(a, e)];
    for (auto [a, c] : cnt) {
      int& slot = out[root_order(a, e)];
      slot = std::max(slot, c);
    }
  }
  return out;
}

// exponents a (mod e) of the linear factors (1 - x zeta^a) making up prod Phi_d^{e_d}
std::multiset<long> linear_factors(const std::map<long, int>& prof, long e) {
  std::multiset<long> out;
  for (long a = 0; a < e; ++a) {
    auto it = prof.find(root_order(a, e));
    if (it != prof.end())
      for (int k = 0; k < it->second; ++k) out.insert(a);
  }
  return out;
}

std::vector<long> complement(const std::multiset<long>& all, const std::vector<long>& part, long e) {
  std::multiset<long> m = all;
  for (long a : part) {
    auto it = m.find(nt::mod(a, e));
    if (it == m.end()) throw ConsistencyError("denominator does not cover a class");
    m.erase(it);
  }
  return {m.begin(), m.end()};
}

std::vector<u64> lin_product(const std::vector<long>& as, const std::vector<u64>& wpow, u64 p) {
  std::vector<u64> c{1};
  for (long a : as) {
    u64 w = (p - wpow[static_cast<std::size_t>(a)]) % p;  // -w^a
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = (c[k] + mulmod(c[k - 1], w, p)) % p;
  }
  return c;
}

mpz_class l1_norm(const CycloNum& c) {
  mpz_class s = 0;
  for (const auto& [k, q] : c.terms()) {
    if (q.get_den() != 1) throw ConsistencyError("character value is not an algebraic integer");
    s += abs(q.get_num());
  }
  return s;
}

Assembled assemble(const Assembly& A) {
  Assembled out;
  out.et = exponent_profile(A.roots, A.e);
  std::vector<std::vector<long>> uroots;
  for (const auto& r : A.roots) {
    std::vector<long> v;
    for (long a : r) v.push_back(nt::mod(-a, A.e));
    uroots.push_back(std::move(v));
  }
  if (A.two_vars) out.eu = exponent_profile(uroots, A.e);
  auto Lt = linear_factors(out.et, A.e);
  auto Lu = linear_factors(out.eu, A.e);
  const std::size_t ng = A.roots.size(), nout = A.coef.size();
  std::vector<std::vector<long>> qt(ng), qu(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    qt[g] = complement(Lt, A.roots[g], A.e);
    if (A.two_vars) qu[g] = complement(Lu, uroots[g], A.e);
  }
  const int DT = static_cast<int>(Lt.size()), DU = static_cast<int>(Lu.size());
  const std::size_t W = static_cast<std::size_t>(DU + 1);
  const std::size_t cells = static_cast<std::size_t>(DT + 1) * W;

  // |coefficient| <= sum_g |coef|_1 2^{deg Q + deg R}
  mpz_class bound = 0;
  for (std::size_t i = 0; i < nout; ++i) {
    mpz_class b = 0;
    for (std::size_t g = 0; g < ng; ++g) {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), 2, qt[g].size() + qu[g].size());
      b += l1_norm(A.coef[i][g]) * pw;
    }
    bound = std::max(bound, b);
  }
  const mpz_class need = 2 * bound + 1;

  std::vector<u64> primes;
  mpz_class modulus = 1;
  u64 cand = (u64{1} << 30) / static_cast<u64>(A.e) * static_cast<u64>(A.e) + 1;
  while (modulus <= need) {
    while (!is_prime(cand)) cand += static_cast<u64>(A.e);
    primes.push_back(cand);
    modulus *= static_cast<unsigned long>(cand);
    cand += static_cast<u64>(A.e);
  }

  // residues[prime][output][cell]
  std::vector<std::vector<std::vector<u64>>> res(primes.size());
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    const u64 p = primes[pi];
    const u64 w = root_of_order(static_cast<u64>(A.e), p);
    std::vector<u64> wpow(static_cast<std::size_t>(A.e));
    wpow[0] = 1;
    for (std::size_t k = 1; k < wpow.size(); ++k) wpow[k] = mulmod(wpow[k - 1], w, p);
    std::vector<std::vector<u64>> Q(ng), R(ng);
    for (std::size_t g = 0; g < ng; ++g) {
      Q[g] = lin_product(qt[g], wpow, p);
      R[g] = lin_product(qu[g], wpow, p);
    }
    auto& rp = res[pi];
    rp.assign(nout, std::vector<u64>(cells, 0));
    for (std::size_t i = 0; i < nout; ++i) {
      auto& acc = rp[i];
      for (std::size_t g = 0; g < ng; ++g) {
        u64 c = to_fp(A.coef[i][g], A.e, wpow, p);
        if (!c) continue;
        for (std::size_t a = 0; a < Q[g].size(); ++a) {
          u64 ca = mulmod(c, Q[g][a], p);
          if (!ca) continue;
          u64* row = acc.data() + a * W;
          for (std::size_t b = 0; b < R[g].size(); ++b) row[b] = (row[b] + mulmod(ca, R[g][b], p)) % p;
        }
      }
    }
  }

  // Garner-style CRT, symmetric lift, then divide by |G|
  const int sign = ((out.et.count(1) ? out.et.at(1) : 0) + (out.eu.count(1) ? out.eu.at(1) : 0)) % 2 ? -1 : 1;
  const mpz_class half = modulus / 2;
  std::vector<mpz_class> prefix{1};
  for (u64 p : primes) prefix.push_back(prefix.back() * static_cast<unsigned long>(p));
  std::vector<u64> inv(primes.size());
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    mpz_class m = prefix[pi] % static_cast<unsigned long>(primes[pi]);
    inv[pi] = powmod(m.get_ui(), primes[pi] - 2, primes[pi]);
  }
  out.M.resize(nout);
  for (std::size_t i = 0; i < nout; ++i) {
    BiPoly poly;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      bool nz = false;
      for (const auto& rp : res)
        if (rp[i][cell]) nz = true;
      if (!nz) continue;
      mpz_class x = 0;
      for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        const u64 p = primes[pi];
        mpz_class xm = x % static_cast<unsigned long>(p);
        u64 cur = xm.get_ui();
        u64 t = mulmod((res[pi][i][cell] + p - cur) % p, inv[pi], p);
        x += prefix[pi] * static_cast<unsigned long>(t);
      }
      if (x > half) x -= modulus;
      if (x % A.order != 0) throw ConsistencyError("non-integer numerator");
      x /= A.order;
      poly.add(static_cast<int>(cell / W), static_cast<int>(cell % W), Rational(x * sign));
    }
    out.M[i] = std::move(poly);
  }
  return out;
}

long lcm_all(long e, const std::vector<std::vector<CycloNum>>& vals) {
  for (const auto& row : vals)
    for (const auto& v : row) e = nt::lcm(e, v.conductor());
  return e;
}

// classes grouped by eigenvalue multiset; members[g] lists classes
struct Grouping {
  std::vector<std::vector<long>> roots;
  std::vector<std::vector<std::size_t>> members;
};

Grouping group_classes(const FiniteMatrixGroup& G, const ConjClassSet& C, long e) {
  Grouping gr;
  std::map<std::vector<long>, std::size_t> seen;
  for (std::size_t j = 0; j < C.count(); ++j) {
    auto r = eigen_exponents(G.elements[static_cast<std::size_t>(C.reps[j])], e);
    std::sort(r.begin(), r.end());
    auto [it, fresh] = seen.emplace(r, gr.roots.size());
    if (fresh) {
      gr.roots.push_back(r);
      gr.members.emplace_back();
    }
    gr.members[it->second].push_back(j);
  }
  return gr;
}

void cancel_t(std::vector<BiPoly>& nums, std::map<long, int>& den) {
  for (auto& [d, e] : den) {
    UniPoly phi = cyclotomic(d);
    while (e > 0) {
      std::vector<BiPoly> q(nums.size());
      bool ok = true;
      for (std::size_t i = 0; i < nums.size() && ok; ++i) ok = nums[i].divide_t(phi, q[i]);
      if (!ok) break;
      nums = std::move(q);
      --e;
    }
  }
  for (auto it = den.begin(); it != den.end();) it = it->second == 0 ? den.erase(it) : std::next(it);
}

void cancel_u(std::vector<BiPoly>& nums, std::map<long, int>& den) {
  for (auto& n : nums) n = n.swapped();
  cancel_t(nums, den);
  for (auto& n : nums) n = n.swapped();
}

CycloRational reduce(UniPoly num, CycloDenominator den) {
  std::vector<BiPoly> v{BiPoly::t_poly(num)};
  cancel_t(v, den.exps);
  return {v[0].at_u0(), den};
}

}  // namespace

RationalBranchingSeries closed_form(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T) {
  if (G.dim != 2 && G.dim != 3) throw DomainError("dimension must be 2 or 3");
  Assembly A;
  A.e = lcm_all(G.exponent(), T.rows);
  A.order = static_cast<long>(G.order());
  A.two_vars = G.dim == 3;
  Grouping gr = group_classes(G, C, A.e);
  A.roots = gr.roots;
  for (const auto& row : T.rows) {
    std::vector<CycloNum> c;
    for (const auto& mem : gr.members) {
      CycloNum s;
      for (std::size_t j : mem) s += CycloNum(C.sizes[j]) * row[j].conj();
      c.push_back(s);
    }
    A.coef.push_back(std::move(c));
  }
  Assembled R = assemble(A);
  cancel_t(R.M, R.et);
  if (A.two_vars) cancel_u(R.M, R.eu);

  RationalBranchingSeries S;
  S.dim = G.dim;
  S.den_t.exps = R.et;
  S.den_u.exps = R.eu;
  BiPoly one_minus_tu = BiPoly::constant(1);
  one_minus_tu.add(1, 1, -1);
  for (auto& m : R.M) S.numerators.push_back(S.dim == 3 ? m * one_minus_tu : m);
  return S;
}

CycloRational molien(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  Assembly A;
  A.e = G.exponent();
  A.order = static_cast<long>(G.order());
  Grouping gr = group_classes(G, C, A.e);
  A.roots = gr.roots;
  std::vector<CycloNum> c;
  for (const auto& mem : gr.members) {
    long s = 0;
    for (std::size_t j : mem) s += C.sizes[j];
    c.emplace_back(s);
  }
  A.coef.push_back(std::move(c));
  Assembled R = assemble(A);
  CycloDenominator d;
  d.exps = R.et;
  return reduce(R.M[0].at_u0(), d);
}

CycloRational t_section(const RationalBranchingSeries& S, std::size_t i) {
  UniPoly num = S.numerators.at(i).at_u0();
  // Phi_1(0) = -1, Phi_d(0) = 1 otherwise
  auto it = S.den_u.exps.find(1);
  if (it != S.den_u.exps.end() && it->second % 2) num = num * UniPoly::monomial(0, -1);
  return reduce(num, S.den_t);
}

namespace {

std::vector<mpz_class> inverse_series(const UniPoly& d, int level) {
  Rational c0 = d[0];
  if (c0 != 1 && c0 != -1) throw ConsistencyError("denominator constant term is not a unit");
  const int s = c0 > 0 ? 1 : -1;
  std::vector<mpz_class> inv(static_cast<std::size_t>(level + 1));
  for (int n = 0; n <= level; ++n) {
    mpz_class acc = n == 0 ? 1 : 0;
    for (int k = 1; k <= std::min(n, d.degree()); ++k) acc -= d[k].get_num() * inv[static_cast<std::size_t>(n - k)];
    inv[static_cast<std::size_t>(n)] = s * acc;
  }
  return inv;
}

long to_long(const mpz_class& x) {
  if (!x.fits_slong_p()) throw ConsistencyError("multiplicity overflow");
  return x.get_si();
}

}  // namespace

MultTable expand(const RationalBranchingSeries& S, int level) {
  if (level < 0) throw DomainError("level must be non-negative");
  auto it_ = inverse_series(S.den_t.expand(), level);
  MultTable out;
  const std::size_t k = S.numerators.size();
  if (S.dim == 2) {
    for (int n = 0; n <= level; ++n) out[{0, n}] = std::vector<long>(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (int n = 0; n <= level; ++n) {
        mpz_class s = 0;
        for (const auto& [key, c] : S.numerators[i].terms())
          if (key.first <= n) s += c.get_num() * it_[static_cast<std::size_t>(n - key.first)];
        out[{0, n}][i] = to_long(s);
      }
    }
    return out;
  }
  auto iu = inverse_series(S.den_u.expand(), level);
  for (int s = 0; s <= level; ++s)
    for (int m = 0; m <= s; ++m) out[{m, s - m}] = std::vector<long>(k, 0);
  const std::size_t L = static_cast<std::size_t>(level + 1);
  for (std::size_t i = 0; i < k; ++i) {
    // Y[a][n] = sum_b N[a][b] iu[n - b]
    std::map<int, std::vector<mpz_class>> Y;
    for (const auto& [key, c] : S.numerators[i].terms()) {
      if (key.first > level) continue;
      auto& row = Y[key.first];
      if (row.empty()) row.assign(L, 0);
      for (int n = key.second; n <= level; ++n) row[static_cast<std::size_t>(n)] += c.get_num() * iu[static_cast<std::size_t>(n - key.second)];
    }
    for (int m = 0; m <= level; ++m)
      for (int n = 0; m + n <= level; ++n) {
        mpz_class s = 0;
        for (const auto& [a, row] : Y)
          if (a <= m) s += it_[static_cast<std::size_t>(m - a)] * row[static_cast<std::size_t>(n)];
        out[{m, n}][i] = to_long(s);
      }
  }
  return out;
}

bool same_rational(const UniPoly& a, const UniPoly& b, const UniPoly& c, const UniPoly& d) { return a * d == b * c; }

bool same_rational(const BiPoly& a, const BiPoly& b, const BiPoly& c, const BiPoly& d) { return a * d == b * c; }

bool rescale(const CycloRational& f, const CycloDenominator& target, UniPoly& num) {
  UniPoly n = f.num;
  for (const auto& [d, e] : f.den.exps) {
    auto it = target.exps.find(d);
    if (e > 0 && (it == target.exps.end() || it->second < e)) return false;
  }
  for (const auto& [d, e] : target.exps) {
    auto it = f.den.exps.find(d);
    int have = it == f.den.exps.end() ? 0 : it->second;
    for (int k = have; k < e; ++k) n = n * cyclotomic(d);
  }
  num = std::move(n);
  return true;
}

bool factor_cyclotomic(const UniPoly& p, CycloDenominator& d, Rational& unit) {
  d.exps.clear();
  if (p.is_zero()) return false;
  UniPoly r = p;
  // Phi_k has degree phi(k) >= sqrt(k/2), so k <= 2 deg^2 suffices
  const long kmax = 2L * (p.degree() + 1) * (p.degree() + 1);
  for (long k = 1; k <= kmax && r.degree() > 0; ++k) {
    UniPoly c = cyclotomic(k), q;
    if (c.degree() > r.degree()) continue;
    while (r.divide_exact(c, q)) {
      r = q;
      d.exps[k]++;
    }
  }
  if (r.degree() != 0) return false;
  unit = r[0];
  return true;
}

std::vector<UniPoly> numerators_over(const RationalBranchingSeries& S, const UniPoly& den) {
  CycloDenominator target;
  Rational unit;
  if (S.dim != 2 || !factor_cyclotomic(den, target, unit)) return {};
  std::vector<UniPoly> out;
  for (const auto& n : S.numerators) {
    UniPoly r;
    if (!rescale(CycloRational{n.at_u0(), S.den_t}, target, r)) return {};
    out.push_back(r * UniPoly::monomial(0, 1 / unit));
  }
  return out;
}

std::string pretty(const RationalBranchingSeries& S) {
  std::ostringstream os;
  const std::string den = S.dim == 3 ? S.den_t.str('t') + " * " + S.den_u.str('u') : S.den_t.str('t');
  os << "D = " << den << "\n";
  for (std::size_t i = 0; i < S.numerators.size(); ++i)
    os << (S.dim == 3 ? "P" + std::to_string(i) + "(t,u) = (" : "P" + std::to_string(i) + "(t) = (")
       << S.numerators[i].str() << ") / D\n";
  return os.str();
}

namespace {

nlohmann::json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

}  // namespace

nlohmann::json to_json(const CycloDenominator& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, e] : d.exps) j[std::to_string(k)] = e;
  return j;
}

nlohmann::json to_json(const CycloRational& f) {
  nlohmann::json num = nlohmann::json::object();
  for (int k = 0; k <= f.num.degree(); ++k)
    if (f.num[k] != 0) num[std::to_string(k)] = rational_json(f.num[k]);
  return {{"numerator", num}, {"denominator", to_json(f.den)}, {"text", "(" + f.num.str() + ")/" + f.den.str()}};
}

nlohmann::json to_json(const RationalBranchingSeries& S) {
  nlohmann::json nums = nlohmann::json::array();
  for (const auto& n : S.numerators) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, c] : n.terms()) o[std::to_string(k.first) + "," + std::to_string(k.second)] = rational_json(c);
    nums.push_back(std::move(o));
  }
  nlohmann::json j = {{"dim", S.dim}, {"den_t", to_json(S.den_t)}, {"numerators", nums}};
  if (S.dim == 3) j["den_u"] = to_json(S.den_u);
  return j;
}

}  // namespace mckay3
