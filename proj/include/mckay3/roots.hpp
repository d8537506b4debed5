#pragma once

#include <string>
#include <vector>

#include "mckay3/mckay.hpp"

namespace mckay3 {

struct ReflectionSet {
  std::vector<IntMatrix> s;
  std::vector<std::vector<int>> partition;  // S_0 .. S_{p-1}
  std::vector<IntMatrix> tau;
  int p = 0;
  bool certified = true;  // false: p is only a heuristic upper bound
};

// (s_k)_ij = delta_ij - C_kj delta_ik
std::vector<IntMatrix> reflections(const IntMatrix& C);

// Search budget for graphs above 40 vertices, in backtracking nodes.
constexpr long kColoringNodeCap = 2'000'000;

// Minimal orthogonal partition of the simple reflections (graph coloring).
ReflectionSet min_partition(const IntMatrix& C, long node_cap = kColoringNodeCap);

// Non-orthogonality graph in DOT, vertices colored by set.
std::string partition_dot(const IntMatrix& C, const ReflectionSet& R);

nlohmann::json to_json(const ReflectionSet& R);

}  // namespace mckay3
