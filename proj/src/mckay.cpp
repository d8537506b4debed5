#include "mckay3/mckay.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "mckay3/errors.hpp"

namespace mckay3 {

namespace {

long as_multiplicity(const CycloNum& v) {
  if (!v.is_integer()) throw ConsistencyError("non-integer multiplicity");
  Rational q = v.to_rational();
  if (q < 0) throw ConsistencyError("non-integer multiplicity");
  return q.get_num().get_si();
}

IntMatrix decompose(const CharacterTable& T, const ClassFunction& psi) {
  const std::size_t k = T.size();
  IntMatrix A(k, std::vector<long>(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    ClassFunction prod(k);
    for (std::size_t c = 0; c < k; ++c) prod[c] = T.rows[j][c] * psi[c];
    for (std::size_t i = 0; i < k; ++i)
      A[i][j] = as_multiplicity(inner_product(prod, T.rows[i], T.class_sizes, T.order));
  }
  return A;
}

}  // namespace

IntMatrix transpose(const IntMatrix& M) {
  if (M.empty()) return M;
  IntMatrix t(M[0].size(), std::vector<long>(M.size()));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) t[j][i] = M[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix R(A.size(), std::vector<long>(B.empty() ? 0 : B[0].size(), 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < B.size(); ++k)
      if (A[i][k])
        for (std::size_t j = 0; j < B[k].size(); ++j) R[i][j] += A[i][k] * B[k][j];
  return R;
}

long rank_over_q(const IntMatrix& M) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : M) {
    std::vector<Rational> r;
    for (long x : row) r.emplace_back(x);
    a.push_back(std::move(r));
  }
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<long>(r);
}

McKayData mckay_matrices(const CharacterTable& T, const ClassFunction& chi) {
  const std::size_t k = T.size();
  if (chi.size() != k) throw DomainError("natural character length mismatch");
  McKayData M;
  M.dim = static_cast<int>(chi[0].to_rational().get_num().get_si());
  if (M.dim != 2 && M.dim != 3) throw DomainError("dimension must be 2 or 3");
  ClassFunction chibar;
  for (const auto& x : chi) chibar.push_back(x.conj());
  M.A1 = decompose(T, chi);
  M.A2 = decompose(T, chibar);
  M.theta = chibar;

  M.C.assign(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      long d = i == j ? 2 : 0;
      if (M.dim == 2)
        M.C[i][j] = d - M.A1[i][j];
      else
        M.C[i][j] = d - M.A1[i][j] - M.A1[j][i] + (i == j ? 2 * M.A1[i][i] : 0);
    }
  if (M.dim == 2 && M.A1 != transpose(M.A1)) throw ConsistencyError("McKay matrix of an SL2 group is not symmetric");
  M.rankA1 = rank_over_q(M.A1);

  // columns of T are eigenvectors: A1 w_j = conj(chi(g_j)) w_j
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      CycloNum lhs;
      for (std::size_t c = 0; c < k; ++c)
        if (M.A1[i][c]) lhs += CycloNum(M.A1[i][c]) * T.rows[c][j];
      if (lhs != M.theta[j] * T.rows[i][j]) throw ConsistencyError("eigenvector check failed");
    }
  return M;
}

std::vector<Edge> graph_edges(const McKayData& M) {
  std::vector<Edge> e;
  const int k = static_cast<int>(M.C.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      long a = M.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      long b = M.C[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      long l = std::max(M.A1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                        M.A1[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      if (a || b) e.push_back({i, j, std::max(std::labs(a), std::labs(b)), l});
    }
  return e;
}

std::string graph_dot(const McKayData& M, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "graph mckay {\n";
  for (std::size_t i = 0; i < M.C.size(); ++i) {
    os << "  " << i;
    std::string lab = i < labels.size() ? labels[i] : std::to_string(i);
    os << " [label=\"" << lab << "\"];\n";
  }
  for (const auto& e : graph_edges(M)) {
    os << "  " << e.i << " -- " << e.j << " [multiplicity=" << e.mult;
    if (e.lines >= 2) os << ", color=\"black:invis:black\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const McKayData& M) {
  nlohmann::json theta = nlohmann::json::array();
  for (const auto& x : M.theta) theta.push_back(to_json(x));
  return {{"dim", M.dim}, {"A1", M.A1}, {"A2", M.A2}, {"C", M.C}, {"theta", theta}, {"rankA1", M.rankA1}};
}

}  // namespace mckay3
