#include "mckay3/weyl.hpp"

#include "mckay3/errors.hpp"

namespace mckay3 {

namespace {

CycloNum product(const std::vector<CycloNum>& v) {
  CycloNum p(1);
  for (const auto& x : v) p *= x;
  return p;
}

// complete homogeneous h_0..h_top from elementary symmetric functions
std::vector<CycloNum> complete_h(const std::vector<CycloNum>& eig, int top) {
  std::vector<CycloNum> e(4);
  e[0] = CycloNum(1);
  if (eig.size() == 2) {
    e[1] = eig[0] + eig[1];
    e[2] = eig[0] * eig[1];
  } else {
    e[1] = eig[0] + eig[1] + eig[2];
    e[2] = eig[0] * eig[1] + eig[0] * eig[2] + eig[1] * eig[2];
    e[3] = eig[0] * eig[1] * eig[2];
  }
  std::vector<CycloNum> h(static_cast<std::size_t>(std::max(top, 0) + 1));
  h[0] = CycloNum(1);
  for (int k = 1; k <= top; ++k) {
    CycloNum s;
    for (int i = 1; i <= 3 && i <= k; ++i) {
      CycloNum t = e[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(k - i)];
      if (i % 2)
        s += t;
      else
        s -= t;
    }
    h[static_cast<std::size_t>(k)] = s;
  }
  return h;
}

CycloNum poly_at(const std::vector<CycloNum>& coeffs, const CycloNum& x) {
  CycloNum v;
  for (std::size_t d = coeffs.size(); d-- > 0;) v = v * x + coeffs[d];
  return v;
}

std::vector<CycloNum> derivative(const std::vector<CycloNum>& c) {
  std::vector<CycloNum> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(CycloNum(static_cast<long>(i)) * c[i]);
  return d;
}

}  // namespace

CycloNum sl3_char_value(int m, int n, const std::vector<CycloNum>& eig) {
  if (eig.size() != 3 || product(eig) != CycloNum(1)) throw DomainError("det ≠ 1 input");
  if (m < 0 || n < 0) throw DomainError("highest weight must be dominant");
  auto h = complete_h(eig, m + n + 2);
  auto H = [&](int k) { return k < 0 ? CycloNum() : h[static_cast<std::size_t>(k)]; };
  const int l[3] = {m + n, n, 0};
  CycloNum a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = H(l[i] - i + j);
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

CycloNum sl2_char_value(int n, const std::vector<CycloNum>& eig) {
  if (eig.size() != 2 || product(eig) != CycloNum(1)) throw DomainError("det ≠ 1 input");
  if (n < 0) throw DomainError("highest weight must be dominant");
  return complete_h(eig, n)[static_cast<std::size_t>(n)];
}

std::vector<long> eigen_exponents(const GroupElement& g, long e) {
  const long d = element_order(g);
  if (e % d != 0) throw DomainError("exponent is not a multiple of the element order");
  // det(x I - g), low degree first
  std::vector<CycloNum> cp;
  if (g.dim() == 2)
    cp = {g.det(), -g.trace(), CycloNum(1)};
  else
    cp = {-g.det(), g.minor_sum(), -g.trace(), CycloNum(1)};
  std::vector<long> out;
  for (long k = 0; k < d && out.size() < static_cast<std::size_t>(g.dim()); ++k) {
    CycloNum z = CycloNum::zeta(d, k);
    auto p = cp;
    while (!p.empty() && poly_at(p, z).is_zero()) {
      out.push_back(k * (e / d));
      p = derivative(p);
    }
  }
  if (out.size() != static_cast<std::size_t>(g.dim())) throw ConsistencyError("eigenvalues not found among roots of unity");
  return out;
}

std::vector<CycloNum> eigenvalues(const GroupElement& g) {
  const long d = element_order(g);
  std::vector<CycloNum> out;
  for (long a : eigen_exponents(g, d)) out.push_back(CycloNum::zeta(d, a));
  return out;
}

long weyl_dim(int dim, int m, int n) {
  if (dim == 2) return n + 1;
  return static_cast<long>(m + 1) * (n + 1) * (m + n + 2) / 2;
}

namespace {

std::vector<std::vector<CycloNum>> class_eigenvalues(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  std::vector<std::vector<CycloNum>> e;
  for (int r : C.reps) e.push_back(eigenvalues(G.elements[static_cast<std::size_t>(r)]));
  return e;
}

std::vector<long> decompose(const ClassFunction& f, const CharacterTable& T) {
  std::vector<long> v;
  for (const auto& row : T.rows) {
    CycloNum ip = inner_product(f, row, T.class_sizes, T.order);
    if (!ip.is_integer() || ip.to_rational() < 0) throw ConsistencyError("non-integer multiplicity");
    v.push_back(ip.to_rational().get_num().get_si());
  }
  return v;
}

ClassFunction weyl_character(const std::vector<std::vector<CycloNum>>& eig, int dim, int m, int n) {
  ClassFunction f;
  for (const auto& e : eig) f.push_back(dim == 2 ? sl2_char_value(n, e) : sl3_char_value(m, n, e));
  return f;
}

}  // namespace

std::vector<long> mults_direct(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T, int m,
                               int n) {
  return decompose(weyl_character(class_eigenvalues(G, C), G.dim, m, n), T);
}

MultTable mults_direct_all(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T, int level) {
  auto eig = class_eigenvalues(G, C);
  MultTable out;
  for (int s = 0; s <= level; ++s)
    for (int m = (G.dim == 2 ? 0 : s); m >= 0; --m) {
      int n = s - m;
      out[{m, n}] = decompose(weyl_character(eig, G.dim, m, n), T);
      if (G.dim == 2) break;
    }
  return out;
}

MultTable mults_recursive(const McKayData& M, int level) {
  const std::size_t k = M.A1.size();
  auto apply = [&](const IntMatrix& A, const std::vector<long>& v) {
    std::vector<long> r(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) r[i] += A[i][j] * v[j];
    return r;
  };
  auto sub = [&](std::vector<long>& a, const std::vector<long>* b) {
    if (b)
      for (std::size_t i = 0; i < k; ++i) a[i] -= (*b)[i];
  };
  MultTable t;
  auto get = [&](int m, int n) -> const std::vector<long>* {
    if (m < 0 || n < 0) return nullptr;
    auto it = t.find({m, n});
    return it == t.end() ? nullptr : &it->second;
  };
  std::vector<long> e0(k, 0);
  e0[0] = 1;
  t[{0, 0}] = e0;
  if (M.dim == 2) {
    // A v_n = v_{n+1} + v_{n-1}
    for (int n = 0; n < level; ++n) {
      auto v = apply(M.A1, t.at({0, n}));
      sub(v, get(0, n - 1));
      t[{0, n + 1}] = std::move(v);
    }
    return t;
  }
  for (int L0 = 0; L0 < level; ++L0) {
    auto v = apply(M.A2, t.at({0, L0}));
    sub(v, get(1, L0 - 1));
    t[{0, L0 + 1}] = std::move(v);
    for (int m = 0; m <= L0; ++m) {
      auto w = apply(M.A1, t.at({m, L0 - m}));
      sub(w, get(m, L0 - m - 1));
      sub(w, get(m - 1, L0 - m + 1));
      t[{m + 1, L0 - m}] = std::move(w);
    }
  }
  return t;
}

nlohmann::json to_json(const MultTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [mn, v] : t) rows.push_back({{"m", mn.first}, {"n", mn.second}, {"mults", v}});
  return rows;
}

}  // namespace mckay3
