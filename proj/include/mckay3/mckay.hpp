#pragma once

#include <string>
#include <vector>

#include "mckay3/chartab.hpp"

namespace mckay3 {

using IntMatrix = std::vector<std::vector<long>>;

struct McKayData {
  int dim = 0;  // 2 or 3, the degree of the natural character
  IntMatrix A1;  // A1[i][j] = mult of gamma_i in gamma_j (x) gamma
  IntMatrix A2;  // same with the dual
  IntMatrix C;
  ClassFunction theta;  // conj(chi(g_j))
  long rankA1 = 0;
};

// SL3: C = 2I - A1 - A1^T + 2 Diag(A1).  SL2: C = 2I - A (affine Cartan matrix).
McKayData mckay_matrices(const CharacterTable& T, const ClassFunction& chi);

long rank_over_q(const IntMatrix& M);
IntMatrix transpose(const IntMatrix& M);
IntMatrix multiply(const IntMatrix& A, const IntMatrix& B);

struct Edge {
  int i, j;  // i < j
  long mult;   // max(|C_ij|, |C_ji|)
  long lines;  // max(A1_ij, A1_ji): drawn as a double line when 2
};
std::vector<Edge> graph_edges(const McKayData& M);
std::string graph_dot(const McKayData& M, const std::vector<std::string>& labels = {});

nlohmann::json to_json(const McKayData& M);

}  // namespace mckay3
