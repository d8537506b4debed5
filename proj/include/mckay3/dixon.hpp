#pragma once

#include <cstdint>
#include <vector>

#include "mckay3/grp.hpp"

namespace mckay3 {

// Irreducible characters by simultaneous eigenvectors of the class matrices
// over F_p (p = 1 mod exp(G), p > |G|), lifted to Q(zeta) through the
// eigenvalue multiplicities on each cyclic subgroup. Rows are unordered.
std::vector<std::vector<CycloNum>> dixon_characters(const FiniteMatrixGroup& G, const ConjClassSet& C);

// Smallest prime p with p = 1 mod e and p > lower.
std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t lower);

}  // namespace mckay3
