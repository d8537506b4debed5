#include <algorithm>
#include <set>

#include "doctest.h"
#include "mckay3/errors.hpp"
#include "mckay3/grp.hpp"

using namespace mckay3;

namespace {

GroupElement M(int dim, std::initializer_list<const char*> entries) {
  std::vector<CycloNum> e;
  for (const char* s : entries) e.push_back(parse_cyclo(s));
  return GroupElement(dim, std::move(e));
}

// binary tetrahedral and octahedral groups in SL2
std::vector<GroupElement> tetra_gens() {
  GroupElement a2 = M(2, {"z4", "0", "0", "-z4"});
  GroupElement b = M(2, {"0", "z4", "z4", "0"});
  CycloNum h = parse_cyclo("s2") / CycloNum(2);
  GroupElement c = M(2, {"z8^7", "z8^7", "z8^5", "z8"}).scaled(h);
  return {a2, b, c};
}

std::vector<GroupElement> octa_gens() {
  auto g = tetra_gens();
  g[0] = M(2, {"z8", "0", "0", "z8^7"});
  return g;
}

std::vector<GroupElement> icosa_gens() {
  GroupElement a = M(2, {"-z5^3", "0", "0", "-z5^2"});
  GroupElement b = M(2, {"0", "1", "-1", "0"});
  CycloNum f = CycloNum(1) / (parse_cyclo("z5^2") - parse_cyclo("z5^3"));
  GroupElement c = M(2, {"z5+z5^4", "1", "1", "-z5-z5^4"}).scaled(f);
  return {a, b, c};
}

std::vector<long> sorted_sizes(const ConjClassSet& C) {
  std::vector<long> s = C.sizes;
  std::sort(s.begin(), s.end());
  return s;
}

// Class invariants checked by explicit matrix products.
void check_classes(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  long total = 0;
  for (long s : C.sizes) {
    total += s;
    CHECK(static_cast<long>(G.order()) % s == 0);
  }
  CHECK(total == static_cast<long>(G.order()));
  CHECK(C.reps[0] == 0);
  CHECK(C.sizes[0] == 1);
  for (std::size_t c = 0; c < C.count(); ++c) {
    const GroupElement& r = G.elements[static_cast<std::size_t>(C.reps[c])];
    std::set<std::string> orbit;
    for (const auto& x : G.elements) orbit.insert((x * r * x.inverse()).key());
    std::set<std::string> members;
    for (int m : C.members[c]) {
      members.insert(G.elements[static_cast<std::size_t>(m)].key());
      CHECK(G.elements[static_cast<std::size_t>(m)].trace() == r.trace());
      CHECK(r.key() <= G.elements[static_cast<std::size_t>(m)].key());
    }
    CHECK(orbit == members);
  }
}

}  // namespace

TEST_CASE("cyclic group of order 3") {
  GroupElement g = GroupElement::diagonal({parse_cyclo("z3"), parse_cyclo("z3^2"), CycloNum(1)});
  auto G = enumerate({g});
  CHECK(G.order() == 3);
  auto C = conjugacy_classes(G);
  CHECK(C.count() == 3);
  check_classes(G, C);
  CHECK(element_order(g) == 3);
}

TEST_CASE("binary tetrahedral group") {
  auto gens = tetra_gens();
  for (const auto& g : gens) CHECK(g.det() == CycloNum(1));
  auto G = enumerate(gens);
  CHECK(G.order() == 24);
  CHECK(G.elements[0] == GroupElement::identity(2));
  auto C = conjugacy_classes(G);
  CHECK(C.count() == 7);
  CHECK(sorted_sizes(C) == std::vector<long>{1, 1, 4, 4, 4, 4, 6});
  check_classes(G, C);
  for (std::size_t x = 0; x < G.order(); ++x) {
    auto inv = static_cast<std::size_t>(G.inverse[x]);
    CHECK(G.elements[x] * G.elements[inv] == GroupElement::identity(2));
  }
  // left tables agree with explicit products
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t x = 0; x < G.order(); ++x)
      CHECK(G.left[g][x] == G.index_of(gens[g] * G.elements[x]));
}

TEST_CASE("binary octahedral group") {
  auto G = enumerate(octa_gens());
  CHECK(G.order() == 48);
  auto C = conjugacy_classes(G);
  CHECK(sorted_sizes(C) == std::vector<long>{1, 1, 6, 6, 6, 8, 8, 12});
  check_classes(G, C);
  // ordering: identity, then by size
  for (std::size_t c = 2; c < C.count(); ++c) CHECK(C.sizes[c - 1] <= C.sizes[c]);
}

TEST_CASE("binary icosahedral group") {
  auto G = enumerate(icosa_gens());
  CHECK(G.order() == 120);
  auto C = conjugacy_classes(G);
  CHECK(C.count() == 9);
  check_classes(G, C);
}

TEST_CASE("type H subgroup of SL3") {
  GroupElement S = GroupElement::diagonal({CycloNum(1), parse_cyclo("z5^4"), parse_cyclo("z5")});
  GroupElement U = M(3, {"-1", "0", "0", "0", "0", "-1", "0", "-1", "0"});
  CycloNum s5 = parse_cyclo("s5");
  GroupElement T = M(3, {"1", "1", "1", "2", "z5^2+z5^3", "z5+z5^4", "2", "z5+z5^4", "z5^2+z5^3"})
                       .scaled(CycloNum(1) / s5);
  CHECK(T.det() == CycloNum(1));
  auto G = enumerate({S, U, T});
  CHECK(G.order() == 60);
  auto C = conjugacy_classes(G);
  CHECK(C.count() == 5);
  check_classes(G, C);
}

TEST_CASE("errors") {
  GroupElement bad = GroupElement::diagonal({CycloNum(2), CycloNum(1), CycloNum(1)});
  CHECK_THROWS_AS(enumerate({bad}), DomainError);
  try {
    enumerate({bad});
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "determinant ≠ 1");
  }
  CHECK_THROWS_WITH_AS(enumerate(octa_gens(), 20), "group exceeds cap", DomainError);
  GroupElement g2 = GroupElement::identity(2), g3 = GroupElement::identity(3);
  CHECK_THROWS_AS(enumerate({g2, g3}), DomainError);
  // infinite order element is caught by the cap
  GroupElement shear = M(2, {"1", "1", "0", "1"});
  CHECK_THROWS_AS(enumerate({shear}, 50), DomainError);
}

TEST_CASE("json round trip and determinism") {
  auto G = enumerate(tetra_gens());
  auto C = conjugacy_classes(G);
  auto G2 = group_from_json(to_json(G));
  CHECK(G2.order() == G.order());
  CHECK(G2.left == G.left);
  CHECK(to_json(G2) == to_json(G));
  auto C2 = classes_from_json(to_json(C));
  CHECK(C2.reps == C.reps);
  CHECK(C2.members == C.members);
  auto C3 = conjugacy_classes(enumerate(tetra_gens()));
  CHECK(C3.reps == C.reps);
  CHECK(element_from_json(to_json(G.elements[5])) == G.elements[5]);
}

TEST_CASE("index multiplication matches matrix products") {
  auto G = enumerate(octa_gens());
  for (std::size_t x = 0; x < G.order(); ++x)
    for (std::size_t y = 0; y < G.order(); y += 5)
      CHECK(G.multiply(static_cast<int>(x), static_cast<int>(y)) == G.index_of(G.elements[x] * G.elements[y]));
  for (std::size_t x = 0; x < G.order(); ++x) {
    CHECK(G.order_of(static_cast<int>(x)) == element_order(G.elements[x]));
    CHECK(G.power(static_cast<int>(x), -1) == G.inverse[x]);
    CHECK(G.power(static_cast<int>(x), G.order_of(static_cast<int>(x))) == 0);
  }
  CHECK(G.exponent() == 24);
  CHECK(enumerate(tetra_gens()).exponent() == 12);
}
