#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "mckay3/errors.hpp"
#include "mckay3/presets.hpp"
#include "mckay3/series.hpp"

using namespace mckay3;

namespace {

bool is_perm(const std::vector<int>& p) {
  std::vector<int> s = p;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("catalog order and aliases") {
  const auto& cat = catalog();
  REQUIRE(cat.size() == 21);
  CHECK(cat.front().name == "A_cyclic");
  CHECK(cat[4].name == "E8");
  CHECK(cat.back().name == "L");
  for (std::size_t i = 0; i < 5; ++i) CHECK(cat[i].dim == 2);
  for (std::size_t i = 5; i < cat.size(); ++i) CHECK(cat[i].dim == 3);
  CHECK(build("E8sl2").name == "E8");
  CHECK(build("D").name == "D_example");
  CHECK(build("Asl2", {{"j", 4}}).label() == "A_cyclic(j=4)");
  CHECK(build("BDa", {{"q", 2}, {"n", 3}}).label() == "BDa(q=2,n=3)");
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_WITH_AS(build("nope"), "unknown preset 'nope'", DomainError);
  CHECK_THROWS_WITH_AS(build("A1"), "invalid parameters: missing parameter j", DomainError);
  CHECK_THROWS_AS(build("BTa", {{"m", 3}}), DomainError);
  CHECK_THROWS_AS(build("BDa", {{"q", 3}, {"n", 3}}), DomainError);
  CHECK_THROWS_AS(build("A2", {{"j1", 2}, {"j2", 3}}), DomainError);
  auto p = parse_params({"q=2", "n=3"});
  CHECK(p.at("q") == 2);
  CHECK(p.at("n") == 3);
  CHECK_THROWS_AS(parse_params({"q"}), DomainError);
  CHECK_THROWS_AS(parse_params({"q=x"}), DomainError);
}

TEST_CASE("generators lie in SL") {
  for (const auto& e : catalog()) {
    Params p;
    for (const auto& k : e.params) p[k] = 0;
    if (e.name == "A_cyclic" || e.name == "A1") p = {{"j", 4}};
    if (e.name == "D_binary") p = {{"n", 3}};
    if (e.name == "A2") p = {{"j1", 3}, {"j2", 2}};
    if (e.name == "BDa") p = {{"q", 2}, {"n", 3}};
    if (e.name == "BTa" || e.name == "BO" || e.name == "BI") p = {{"m", 1}};
    if (e.name == "C") p = {{"m", 2}};
    auto pre = build(e.name, p);
    CHECK(pre.dim == e.dim);
    for (const auto& g : pre.generators) {
      CHECK(g.dim() == e.dim);
      CHECK(g.det() == CycloNum(1));
    }
  }
}

TEST_CASE("expected data is well formed") {
  for (const auto& e : catalog()) {
    auto j = expected_data(e.name);
    CHECK(e.has_expected == j.has_value());
    if (!j) continue;
    if (j->contains("theta"))
      for (const auto& s : j->at("theta")) CHECK_NOTHROW(parse_cyclo(s.get<std::string>()));
    if (j->contains("denominator")) CHECK_NOTHROW(parse_poly(j->at("denominator").get<std::string>()));
    if (j->contains("numerators"))
      for (const auto& s : j->at("numerators")) CHECK_NOTHROW(parse_poly(s.get<std::string>()));
    if (j->contains("ref_perm")) {
      auto perm = j->at("ref_perm").get<std::vector<int>>();
      CHECK(is_perm(perm));
      CHECK(perm[0] == 0);
      if (j->contains("classes")) CHECK(perm.size() == j->at("classes").get<std::size_t>());
    }
  }
  for (const char* n : {"E6", "E7", "E8", "D_example", "E", "F", "G", "H", "I", "J", "K", "L"}) CHECK(expected_data(n));
}

TEST_CASE("printed denominators are cyclotomic products") {
  // each printed D_X(t) is monic up to sign and divides some t^N - 1 power; check it factors over Phi_d
  for (const char* n : {"E", "F", "G", "H", "I", "J", "K", "L"}) {
    UniPoly d = parse_poly(expected_data(n)->at("denominator").get<std::string>()).at_u0();
    int deg = 0;
    for (long k = 1; k <= 60 && d.degree() > 0; ++k) {
      UniPoly q;
      while (d.divide_exact(cyclotomic(k), q)) {
        d = q;
        deg += static_cast<int>(cyclotomic(k).degree());
      }
    }
    CHECK(d == UniPoly::monomial(0));
    CHECK(deg > 0);
  }
}

TEST_CASE("orders and class counts match the recorded values") {
  for (const char* n : {"E6", "E7", "E8", "D_example", "E", "H", "I", "J"}) {
    auto pre = build(n);
    auto G = enumerate(pre.generators);
    CHECK(G.order() == pre.expected->at("order").get<std::size_t>());
    auto C = conjugacy_classes(G);
    auto perm = ref_perm(pre);
    REQUIRE(perm);
    CHECK(C.count() == perm->size());
  }
}

TEST_CASE("B series class counts scale with m") {
  struct Case {
    const char* name;
    int per;
    long m2;
  };
  for (auto [name, per, m2] : {Case{"BTa", 7, 5}, Case{"BO", 8, 5}, Case{"BI", 9, 7}}) {
    for (long m : {1L, m2}) {
      auto pre = build(name, {{"m", m}});
      auto G = enumerate(pre.generators);
      CHECK(conjugacy_classes(G).count() == static_cast<std::size_t>(per * m));
    }
    CHECK(ref_perm(build(name, {{"m", 1}})).has_value());
    CHECK_FALSE(ref_perm(build(name, {{"m", m2}})).has_value());
  }
}
