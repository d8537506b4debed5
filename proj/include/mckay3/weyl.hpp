#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mckay3/chartab.hpp"
#include "mckay3/mckay.hpp"

namespace mckay3 {

// (m, n) -> multiplicity vector over the irreducibles. For SL2 only n is used (m = 0).
using MultTable = std::map<std::pair<int, int>, std::vector<long>>;

// s_{(m+n, n, 0)} at three eigenvalues with product 1 (Jacobi-Trudi).
CycloNum sl3_char_value(int m, int n, const std::vector<CycloNum>& eig);
// h_n(x, y) at two eigenvalues with product 1.
CycloNum sl2_char_value(int n, const std::vector<CycloNum>& eig);

// Eigenvalues of g (with multiplicity, ascending exponent), found by
// substituting the d-th roots of unity, d = order of g.
std::vector<CycloNum> eigenvalues(const GroupElement& g);
// Same, as exponents a of zeta_e^a; e must be a multiple of the order of g.
std::vector<long> eigen_exponents(const GroupElement& g, long e);

long weyl_dim(int dim, int m, int n);

// Schur average over the classes; the test oracle.
std::vector<long> mults_direct(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T, int m,
                               int n);
MultTable mults_direct_all(const FiniteMatrixGroup& G, const ConjClassSet& C, const CharacterTable& T, int level);

// Production path: the tensor recurrences. dim 2 uses A1 only.
MultTable mults_recursive(const McKayData& M, int level);

nlohmann::json to_json(const MultTable& t);

}  // namespace mckay3
