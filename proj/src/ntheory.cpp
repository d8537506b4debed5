#include "mckay3/ntheory.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mckay3::nt {

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, nt = 1, r = n, nr = mod(a, n);
  while (nr) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: not a unit");
  return mod(t, n);
}

namespace {

// x^n - 1 divided successively by Phi_d for proper divisors d.
std::vector<std::int64_t> compute_cyclotomic(std::int64_t n) {
  std::vector<std::int64_t> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::int64_t d : divisors(n)) {
    if (d == n) continue;
    auto den = cyclotomic_poly(d);
    // exact division by a monic polynomial
    std::size_t dn = den.size() - 1;
    std::vector<std::int64_t> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      std::int64_t c = num[i];
      q[i - dn] = c;
      for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    num = q;
  }
  return num;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_poly(std::int64_t d) {
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  auto v = compute_cyclotomic(d);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, v);
  return v;
}

}  // namespace mckay3::nt
