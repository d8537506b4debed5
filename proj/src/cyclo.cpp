#include "mckay3/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "mckay3/errors.hpp"
#include "mckay3/ntheory.hpp"

namespace mckay3 {

namespace {

struct PrimePart {
  std::int64_t p, q, phiq, inv, np;
};

struct CondInfo {
  std::vector<PrimePart> parts;
};

const CondInfo& cond_info(std::int64_t n) {
  thread_local std::unordered_map<std::int64_t, CondInfo> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  CondInfo ci;
  for (auto [p, e] : nt::factor(n)) {
    std::int64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    ci.parts.push_back({p, q, q - q / p, nt::inverse_mod((n / q) % q, q), n / p});
  }
  return cache.emplace(n, std::move(ci)).first->second;
}

// Component of exponent k in the zeta_q factor.
inline std::int64_t component(const PrimePart& pp, std::int64_t k) {
  return (k % pp.q) * pp.inv % pp.q;
}

void merge_terms(std::vector<CycloNum::Term>& v) {
  std::sort(v.begin(), v.end(),
            [](const CycloNum::Term& a, const CycloNum::Term& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    std::int64_t k = v[r].first;
    Rational c = v[r].second;
    std::size_t s = r + 1;
    while (s < v.size() && v[s].first == k) c += v[s++].second;
    if (c != 0) {
      v[w].first = k;
      v[w].second = c;
      ++w;
    }
    r = s;
  }
  v.resize(w);
}

// Rewrites every term outside the basis using sum_{j<p} zeta^(k + j n/p) = 0.
void reduce_terms(std::int64_t n, std::vector<CycloNum::Term>& v) {
  merge_terms(v);
  for (const auto& pp : cond_info(n).parts) {
    bool need = false;
    for (const auto& t : v)
      if (component(pp, t.first) >= pp.phiq) {
        need = true;
        break;
      }
    if (!need) continue;
    std::vector<CycloNum::Term> out;
    out.reserve(v.size() * static_cast<std::size_t>(pp.p));
    for (auto& t : v) {
      if (component(pp, t.first) >= pp.phiq) {
        for (std::int64_t j = 1; j < pp.p; ++j)
          out.emplace_back(nt::mod(t.first - j * pp.np, n), -t.second);
      } else {
        out.push_back(std::move(t));
      }
    }
    merge_terms(out);
    v = std::move(out);
  }
}

// Drops primes from the conductor while the element lives in the subfield.
std::int64_t minimize(std::int64_t n, std::vector<CycloNum::Term>& v) {
  if (v.empty()) return 1;
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    for (auto [p, e] : nt::factor(n)) {
      bool all = std::all_of(v.begin(), v.end(),
                             [p = p](const CycloNum::Term& t) { return t.first % p == 0; });
      if (!all) continue;
      for (auto& t : v) t.first /= p;
      n /= p;
      changed = true;
      break;
    }
  }
  return n;
}

std::vector<CycloNum::Term> lifted(const CycloNum& a, std::int64_t L) {
  std::vector<CycloNum::Term> v = a.terms();
  std::int64_t f = L / a.conductor();
  if (f != 1)
    for (auto& t : v) t.first *= f;
  return v;
}

}  // namespace

CycloNum::CycloNum(long v) {
  if (v != 0) t_.emplace_back(0, Rational(v));
}

CycloNum::CycloNum(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c != 0) t_.emplace_back(0, std::move(c));
}

CycloNum CycloNum::zeta(std::int64_t n, std::int64_t k) {
  if (n < 1) throw DomainError("root_of_unity: n must be positive");
  return from_terms(n, {{nt::mod(k, n), Rational(1)}});
}

CycloNum CycloNum::from_terms(std::int64_t n, std::vector<Term> terms) {
  if (n < 1) throw DomainError("cyclotomic conductor must be positive");
  for (auto& t : terms) t.first = nt::mod(t.first, n);
  reduce_terms(n, terms);
  CycloNum r;
  r.n_ = minimize(n, terms);
  r.t_ = std::move(terms);
  return r;
}

bool CycloNum::is_integer() const {
  return n_ == 1 && (t_.empty() || t_[0].second.get_den() == 1);
}

Rational CycloNum::to_rational() const {
  if (n_ != 1) throw DomainError("cyclotomic number is not rational: " + str());
  return t_.empty() ? Rational(0) : t_[0].second;
}

CycloNum CycloNum::conj() const { return galois(-1); }

CycloNum CycloNum::galois(std::int64_t a) const {
  if (n_ == 1) return *this;
  if (nt::gcd(nt::mod(a, n_), n_) != 1) throw DomainError("galois: exponent not a unit");
  std::vector<Term> v = t_;
  for (auto& t : v) t.first = nt::mod(a * t.first, n_);
  return from_terms(n_, std::move(v));
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::int64_t L = nt::lcm(n_, o.n_);
  std::vector<Term> v = lifted(*this, L);
  auto w = lifted(o, L);
  v.insert(v.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  merge_terms(v);
  n_ = minimize(L, v);
  t_ = std::move(v);
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) { return *this += -o; }

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = CycloNum();
  if (o.n_ == 1) {
    const Rational& c = o.t_[0].second;
    for (auto& t : t_) t.second *= c;
    return *this;
  }
  if (n_ == 1) {
    Rational c = t_[0].second;
    *this = o;
    for (auto& t : t_) t.second *= c;
    return *this;
  }
  std::int64_t L = nt::lcm(n_, o.n_);
  auto a = lifted(*this, L);
  auto b = lifted(o, L);
  std::vector<Term> v;
  v.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      std::int64_t k = x.first + y.first;
      if (k >= L) k -= L;
      v.emplace_back(k, x.second * y.second);
    }
  reduce_terms(L, v);
  n_ = minimize(L, v);
  t_ = std::move(v);
  return *this;
}

CycloNum& CycloNum::operator/=(const CycloNum& o) { return *this *= o.inverse(); }

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DomainError("division by zero in cyclotomic arithmetic");
  if (n_ == 1) return CycloNum(Rational(1) / t_[0].second);
  if (t_.size() == 1) {
    return from_terms(n_, {{-t_[0].first, Rational(1) / t_[0].second}});
  }
  // Solve x * y = 1 in coordinates.
  CycloBasis B(n_);
  const std::size_t d = B.dim();
  std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    CycloNum col = *this * zeta(n_, B.exponents()[j]);
    auto c = B.coords(col);
    for (std::size_t i = 0; i < d; ++i) M[i][j] = c[i];
  }
  M[static_cast<std::size_t>(B.index_of(0))][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && M[piv][c] == 0) ++piv;
    if (piv == d) throw ConsistencyError("singular multiplication matrix in inverse");
    std::swap(M[c], M[piv]);
    Rational inv = 1 / M[c][c];
    for (std::size_t k = c; k <= d; ++k) M[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rational f = M[r][c];
      for (std::size_t k = c; k <= d; ++k) M[r][k] -= f * M[c][k];
    }
  }
  std::vector<Rational> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = M[i][d];
  return B.from_coords(y);
}

std::complex<double> CycloNum::embed() const {
  std::complex<double> s = 0;
  for (const auto& [k, c] : t_) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
    s += c.get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string CycloNum::key() const {
  std::string s = std::to_string(n_);
  s += ':';
  for (const auto& [k, c] : t_) {
    s += std::to_string(k);
    s += '=';
    s += c.get_str();
    s += ';';
  }
  return s;
}

std::string CycloNum::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : t_) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string atom;
    if (k != 0) {
      atom = "z" + std::to_string(n_);
      if (k != 1) atom += "^" + std::to_string(k);
    }
    std::string piece;
    if (atom.empty())
      piece = a.get_str();
    else if (a == 1)
      piece = atom;
    else
      piece = a.get_str() + "*" + atom;
    if (s.empty())
      s = neg ? "-" + piece : piece;
    else
      s += (neg ? "-" : "+") + piece;
  }
  return s;
}

CycloNum root_of_unity(std::int64_t n, std::int64_t k) { return CycloNum::zeta(n, k); }

CycloNum arith(const CycloNum& a, const CycloNum& b, Op op) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Sub:
      return a - b;
    case Op::Mul:
      return a * b;
    case Op::Div:
      return a / b;
  }
  return {};
}

nlohmann::json to_json(const CycloNum& a) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& [k, q] : a.terms()) c.push_back({k, q.get_str()});
  return {{"n", a.conductor()}, {"c", c}};
}

CycloNum cyclo_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return CycloNum(j.get<long>());
  if (j.is_string()) return parse_cyclo(j.get<std::string>());
  if (!j.is_object() || !j.contains("n") || !j.contains("c"))
    throw DomainError("cyclotomic JSON must be {\"n\":..,\"c\":[[k,\"p/q\"],..]}");
  std::int64_t n = j.at("n").get<std::int64_t>();
  std::vector<CycloNum::Term> v;
  for (const auto& e : j.at("c")) {
    if (!e.is_array() || e.size() != 2) throw DomainError("bad cyclotomic coefficient entry");
    Rational q;
    if (e[1].is_string()) {
      if (q.set_str(e[1].get<std::string>(), 10) != 0)
        throw DomainError("bad rational '" + e[1].get<std::string>() + "'");
      q.canonicalize();
    } else {
      q = Rational(e[1].get<long>());
    }
    v.emplace_back(e[0].get<std::int64_t>(), q);
  }
  return CycloNum::from_terms(n, std::move(v));
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip();
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) fail();
    return std::stoll(std::string(s.substr(st, i - st)));
  }
  [[noreturn]] void fail() const {
    throw DomainError("cannot parse cyclotomic expression '" + std::string(s) + "'");
  }
  bool at_atom() {
    skip();
    return i < s.size() && (s[i] == 'z' || s[i] == 'i' || s[i] == 's');
  }
  CycloNum atom() {
    skip();
    CycloNum a;
    if (s[i] == 'z') {
      ++i;
      a = CycloNum::zeta(integer());
    } else if (s[i] == 'i') {
      ++i;
      a = CycloNum::zeta(4);
    } else {
      ++i;
      std::int64_t r = integer();
      if (r == 2)
        a = CycloNum::zeta(8) + CycloNum::zeta(8, 7);
      else if (r == 3)
        a = CycloNum::zeta(12) + CycloNum::zeta(12, 11);
      else if (r == 5)
        a = CycloNum(2) * (CycloNum::zeta(5) + CycloNum::zeta(5, 4)) + CycloNum(1);
      else
        fail();
    }
    if (eat('^')) {
      std::int64_t e = integer();
      CycloNum p(1);
      for (std::int64_t k = 0; k < e; ++k) p *= a;
      a = p;
    }
    return a;
  }
  CycloNum term() {
    CycloNum v(1);
    skip();
    bool any = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      Rational q(integer());
      if (eat('/')) q /= Rational(integer());
      v = CycloNum(q);
      any = true;
    }
    while (true) {
      if (any) eat('*');
      if (!at_atom()) break;
      v *= atom();
      any = true;
    }
    if (!any) fail();
    return v;
  }
  CycloNum expr() {
    CycloNum total;
    bool first = true;
    while (true) {
      skip();
      if (i >= s.size()) break;
      bool neg = false;
      if (eat('-'))
        neg = true;
      else if (!eat('+') && !first)
        fail();
      CycloNum t = term();
      total += neg ? -t : t;
      first = false;
    }
    if (first) fail();
    return total;
  }
};

}  // namespace

CycloNum parse_cyclo(std::string_view text) {
  Parser p{text};
  return p.expr();
}

CycloBasis::CycloBasis(std::int64_t N) : N_(N) {
  if (N < 1) throw DomainError("CycloBasis: conductor must be positive");
  const auto& parts = cond_info(N).parts;
  index_.assign(static_cast<std::size_t>(N), -1);
  for (std::int64_t k = 0; k < N; ++k) {
    bool ok = std::all_of(parts.begin(), parts.end(),
                          [k](const PrimePart& pp) { return component(pp, k) < pp.phiq; });
    if (ok) {
      index_[static_cast<std::size_t>(k)] = static_cast<int>(exps_.size());
      exps_.push_back(k);
    }
  }
  expand_.resize(static_cast<std::size_t>(N));
  unit_.assign(static_cast<std::size_t>(N), 0);
  for (std::int64_t s = 0; s < N; ++s) {
    std::vector<CycloNum::Term> v{{s, Rational(1)}};
    reduce_terms(N, v);
    auto& e = expand_[static_cast<std::size_t>(s)];
    for (const auto& [k, c] : v) {
      int sign = c > 0 ? 1 : -1;
      e.emplace_back(index_[static_cast<std::size_t>(k)], sign);
      if (k == 0) unit_[static_cast<std::size_t>(s)] = sign;
    }
  }
}

const std::vector<std::pair<int, int>>& CycloBasis::expansion(std::int64_t s) const {
  return expand_[static_cast<std::size_t>(nt::mod(s, N_))];
}

std::vector<Rational> CycloBasis::coords(const CycloNum& a) const {
  if (N_ % a.conductor() != 0)
    throw DomainError("element of conductor " + std::to_string(a.conductor()) +
                      " does not lie in Q(zeta_" + std::to_string(N_) + ")");
  std::vector<Rational> c(dim());
  std::int64_t f = N_ / a.conductor();
  for (const auto& [k, q] : a.terms()) c[static_cast<std::size_t>(index_of(k * f))] = q;
  return c;
}

CycloNum CycloBasis::from_coords(const std::vector<Rational>& c) const {
  std::vector<CycloNum::Term> v;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) v.emplace_back(exps_[i], c[i]);
  return CycloNum::from_terms(N_, std::move(v));
}

}  // namespace mckay3
