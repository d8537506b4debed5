#include "mckay3/dixon.hpp"

#include <cmath>

#include "mckay3/errors.hpp"
#include "mckay3/ntheory.hpp"

namespace mckay3 {

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p == 0) throw ConsistencyError("division by zero mod p");
    return pow(a, p - 2);
  }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(const Fp& F) {
  auto fac = nt::factor(static_cast<std::int64_t>(F.p - 1));
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& [q, e] : fac)
      if (F.pow(g, (F.p - 1) / static_cast<u64>(q)) == 1) ok = false;
    if (ok) return g;
  }
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const Fp& F, Mat& A) {
  std::vector<std::size_t> piv;
  if (A.empty()) return piv;
  std::size_t rows = A.size(), cols = A[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t i = r;
    while (i < rows && A[i][c] == 0) ++i;
    if (i == rows) continue;
    std::swap(A[i], A[r]);
    u64 s = F.inv(A[r][c]);
    for (auto& x : A[r]) x = F.mul(x, s);
    for (std::size_t t = 0; t < rows; ++t) {
      if (t == r || A[t][c] == 0) continue;
      u64 u = A[t][c];
      for (std::size_t j = 0; j < cols; ++j) A[t][j] = F.sub(A[t][j], F.mul(u, A[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  A.resize(r);
  return piv;
}

std::vector<Vec> nullspace(const Fp& F, Mat A) {
  std::size_t n = A[0].size();
  auto piv = rref(F, A);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.sub(0, A[r][f]);
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial via Hessenberg reduction; coefficients low to high.
Vec charpoly(const Fp& F, Mat H) {
  std::size_t n = H.size();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t i = c + 1;
    while (i < n && H[i][c] == 0) ++i;
    if (i == n) continue;
    if (i != c + 1) {
      std::swap(H[i], H[c + 1]);
      for (auto& row : H) std::swap(row[i], row[c + 1]);
    }
    u64 s = F.inv(H[c + 1][c]);
    for (std::size_t r = c + 2; r < n; ++r) {
      if (H[r][c] == 0) continue;
      u64 u = F.mul(H[r][c], s);
      for (std::size_t j = 0; j < n; ++j) H[r][j] = F.sub(H[r][j], F.mul(u, H[c + 1][j]));
      for (std::size_t j = 0; j < n; ++j) H[j][c + 1] = F.add(H[j][c + 1], F.mul(u, H[j][r]));
    }
  }
  std::vector<Vec> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Vec q(m + 1, 0);
    // (x - h_mm) p_{m-1}
    for (std::size_t d = 0; d < P[m - 1].size(); ++d) {
      q[d + 1] = F.add(q[d + 1], P[m - 1][d]);
      q[d] = F.sub(q[d], F.mul(H[m - 1][m - 1], P[m - 1][d]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = F.mul(t, H[m - i][m - i - 1]);
      u64 c = F.mul(H[m - 1 - i][m - 1], t);
      if (c == 0) continue;
      for (std::size_t d = 0; d < P[m - 1 - i].size(); ++d) q[d] = F.sub(q[d], F.mul(c, P[m - 1 - i][d]));
    }
    P[m] = std::move(q);
  }
  return P[n];
}

}  // namespace

std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t lower) {
  u64 p = (lower / e + 1) * e + 1;
  while (!is_prime(p)) p += e;
  return p;
}

std::vector<std::vector<CycloNum>> dixon_characters(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  const std::size_t k = C.count();
  const u64 order = G.order();
  const u64 e = static_cast<u64>(G.exponent());
  const Fp F{dixon_prime(e, order)};

  std::vector<std::size_t> inv_class(k);
  for (std::size_t t = 0; t < k; ++t)
    inv_class[t] = static_cast<std::size_t>(C.class_of[static_cast<std::size_t>(G.inverse[static_cast<std::size_t>(C.reps[t])])]);

  // a[r][s][t] = #{x in C_r : x^-1 z_t in C_s}
  std::vector<Mat> a(k, Mat(k, Vec(k, 0)));
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t x = 0; x < G.order(); ++x) {
      auto r = static_cast<std::size_t>(C.class_of[x]);
      int y = G.multiply(G.inverse[x], C.reps[t]);
      auto s = static_cast<std::size_t>(C.class_of[static_cast<std::size_t>(y)]);
      ++a[r][s][t];
    }

  // split F_p^k into common eigenlines of all class matrices
  std::vector<Mat> spaces;
  {
    Mat id(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    spaces.push_back(id);
  }
  for (std::size_t r = 1; r < k; ++r) {
    std::vector<Mat> next;
    for (auto& B : spaces) {
      std::size_t n = B.size();
      if (n == 1) {
        next.push_back(B);
        continue;
      }
      auto piv = rref(F, B);
      Mat R(n, Vec(n, 0));
      for (std::size_t j = 0; j < n; ++j) {
        Vec y(k, 0);
        for (std::size_t s = 0; s < k; ++s)
          for (std::size_t t = 0; t < k; ++t)
            if (a[r][s][t]) y[s] = F.add(y[s], F.mul(a[r][s][t] % F.p, B[j][t]));
        for (std::size_t i = 0; i < n; ++i) R[i][j] = y[piv[i]];
      }
      Vec cp = charpoly(F, R);
      std::size_t covered = 0;
      for (u64 lam = 0; lam < F.p && covered < n; ++lam) {
        u64 v = 0;
        for (std::size_t d = cp.size(); d-- > 0;) v = F.add(F.mul(v, lam), cp[d]);
        if (v != 0) continue;
        Mat A = R;
        for (std::size_t i = 0; i < n; ++i) A[i][i] = F.sub(A[i][i], lam);
        Mat sub;
        for (const auto& c : nullspace(F, A)) {
          Vec w(k, 0);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < k; ++t) w[t] = F.add(w[t], F.mul(c[i], B[i][t]));
          sub.push_back(std::move(w));
        }
        covered += sub.size();
        next.push_back(std::move(sub));
      }
      if (covered != n) throw ConsistencyError("class matrix is not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw ConsistencyError("class matrices do not separate characters");

  const u64 W = F.pow(primitive_root(F), (F.p - 1) / e);
  const auto bound = static_cast<u64>(std::sqrt(static_cast<double>(order))) + 1;
  std::vector<std::vector<CycloNum>> rows;
  for (auto& B : spaces) {
    Vec w = B[0];
    u64 s = F.inv(w[0]);
    for (auto& x : w) x = F.mul(x, s);
    u64 norm = 0;
    for (std::size_t t = 0; t < k; ++t)
      norm = F.add(norm, F.mul(F.mul(w[t], w[inv_class[t]]), F.inv(static_cast<u64>(C.sizes[t]))));
    u64 d2 = F.mul(order % F.p, F.inv(norm)), d = 0;
    for (u64 c = 1; c <= bound; ++c)
      if (c * c % F.p == d2 && c * c <= order) d = c;
    if (d == 0) throw ConsistencyError("degree not recovered mod p");
    Vec val(k);
    for (std::size_t t = 0; t < k; ++t) val[t] = F.mul(F.mul(w[t], d), F.inv(static_cast<u64>(C.sizes[t])));

    std::vector<CycloNum> row(k);
    for (std::size_t t = 0; t < k; ++t) {
      int g = C.reps[t];
      long o = G.order_of(g);
      u64 wo = F.pow(W, e / static_cast<u64>(o));
      std::vector<u64> vals;
      int x = 0;
      for (long j = 0; j < o; ++j) {
        vals.push_back(val[static_cast<std::size_t>(C.class_of[static_cast<std::size_t>(x)])]);
        x = G.multiply(g, x);
      }
      std::vector<CycloNum::Term> terms;
      u64 oinv = F.inv(static_cast<u64>(o));
      for (long kk = 0; kk < o; ++kk) {
        u64 m = 0, step = F.inv(F.pow(wo, static_cast<u64>(kk))), pw = 1;
        for (long j = 0; j < o; ++j) {
          m = F.add(m, F.mul(vals[static_cast<std::size_t>(j)], pw));
          pw = F.mul(pw, step);
        }
        m = F.mul(m, oinv);
        if (m > d) throw ConsistencyError("eigenvalue multiplicity out of range");
        if (m) terms.emplace_back(kk, Rational(static_cast<long>(m)));
      }
      row[t] = CycloNum::from_terms(o, std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mckay3
