#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "mckay3/cyclo.hpp"

namespace mckay3 {

// dim x dim matrix over CycloNum, row-major.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(int dim, std::vector<CycloNum> entries);

  static GroupElement identity(int dim);
  static GroupElement diagonal(const std::vector<CycloNum>& d);

  int dim() const { return dim_; }
  const CycloNum& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * dim_ + j)]; }
  const std::vector<CycloNum>& entries() const { return e_; }

  CycloNum trace() const;
  CycloNum det() const;
  // Coefficient of x^(dim-2) in det(x I - g) up to sign: sum of principal 2x2 minors.
  CycloNum minor_sum() const;
  GroupElement inverse() const;  // adjugate / det
  GroupElement operator*(const GroupElement& o) const;
  GroupElement scaled(const CycloNum& c) const;
  bool operator==(const GroupElement& o) const { return e_ == o.e_; }

  const std::string& key() const { return key_; }

 private:
  int dim_ = 0;
  std::vector<CycloNum> e_;
  std::string key_;
};

struct FiniteMatrixGroup {
  int dim = 0;
  std::vector<GroupElement> elements;      // identity first, BFS order
  std::vector<int> generators;             // element index of each generator
  std::vector<std::vector<int>> left;      // left[g][x] = index of gen_g * x
  std::vector<int> inverse;                // index of x^-1
  std::vector<int> parent;                 // x = gen_{parent_gen[x]} * parent[x]; -1 at identity
  std::vector<int> parent_gen;
  std::unordered_map<std::string, int> lookup;

  std::size_t order() const { return elements.size(); }
  int index_of(const GroupElement& g) const;  // -1 when absent

  // Index arithmetic through the generator words; no matrix products.
  int multiply(int x, int y) const;
  int power(int x, long k) const;
  long order_of(int x) const;
  long exponent() const;
};

struct ConjClassSet {
  std::vector<int> class_of;  // element -> class
  std::vector<int> reps;      // class -> element
  std::vector<long> sizes;    // class -> size
  std::vector<std::vector<int>> members;

  std::size_t count() const { return reps.size(); }
};

constexpr std::size_t kDefaultGroupCap = 10000;

FiniteMatrixGroup enumerate(const std::vector<GroupElement>& generators,
                            std::size_t cap = kDefaultGroupCap);
ConjClassSet conjugacy_classes(const FiniteMatrixGroup& G);

// Order of g found by repeated multiplication (g must have finite order).
long element_order(const GroupElement& g, long limit = 100000);

nlohmann::json to_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FiniteMatrixGroup& G);
nlohmann::json to_json(const ConjClassSet& C);
FiniteMatrixGroup group_from_json(const nlohmann::json& j);
ConjClassSet classes_from_json(const nlohmann::json& j);

}  // namespace mckay3
