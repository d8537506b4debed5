#pragma once

#include <vector>

#include "mckay3/grp.hpp"

namespace mckay3 {

// Values per conjugacy class, in ConjClassSet order.
using ClassFunction = std::vector<CycloNum>;

struct CharacterTable {
  std::vector<ClassFunction> rows;  // row 0 is the trivial character
  std::vector<long> degrees;
  std::vector<long> class_sizes;
  long order = 0;

  std::size_t size() const { return rows.size(); }
  // rows[conj_perm()[i]] == conj(rows[i])
  std::vector<int> conj_perm() const;
};

ClassFunction natural_character(const FiniteMatrixGroup& G, const ConjClassSet& C);

// (1/|G|) sum_j |C_j| phi_j conj(psi_j)
CycloNum inner_product(const ClassFunction& phi, const ClassFunction& psi, const std::vector<long>& sizes,
                       long order);
CycloNum inner_product(const ClassFunction& phi, const ClassFunction& psi, const ConjClassSet& C);

// Class index of rep_j^k for every class j.
std::vector<int> power_map(const FiniteMatrixGroup& G, const ConjClassSet& C, long k);

CharacterTable character_table(const FiniteMatrixGroup& G, const ConjClassSet& C);

nlohmann::json to_json(const CharacterTable& T);
CharacterTable table_from_json(const nlohmann::json& j);

}  // namespace mckay3
