#include "mckay3/presets.hpp"

#include <algorithm>
#include <functional>

#include "mckay3/errors.hpp"
#include "mckay3/ntheory.hpp"

namespace mckay3::resources {
const std::map<std::string, std::string>& expected_files();
}

namespace mckay3 {

namespace {

CycloNum cy(const char* s) { return parse_cyclo(s); }
CycloNum z(long n, long k = 1) { return CycloNum::zeta(n, k); }

GroupElement M(int dim, std::initializer_list<CycloNum> e) { return GroupElement(dim, std::vector<CycloNum>(e)); }

GroupElement diag(std::initializer_list<CycloNum> d) { return GroupElement::diagonal(std::vector<CycloNum>(d)); }

GroupElement block(const GroupElement& m2) {
  return M(3, {1, 0, 0, 0, m2(0, 0), m2(0, 1), 0, m2(1, 0), m2(1, 1)});
}

[[noreturn]] void invalid(const std::string& why) { throw DomainError("invalid parameters: " + why); }

long need(const Params& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) invalid("missing parameter " + k);
  return it->second;
}

// SL2 pieces shared with the B series.
GroupElement sl2_b() { return M(2, {0, z(4), z(4), 0}); }
GroupElement sl2_c() { return M(2, {z(8, 7), z(8, 7), z(8, 5), z(8)}).scaled(cy("s2") / CycloNum(2)); }
GroupElement sl2_a8() { return diag({z(8), z(8, 7)}); }
GroupElement e8_a() { return diag({-z(5, 3), -z(5, 2)}); }
GroupElement e8_b() { return M(2, {0, 1, -1, 0}); }
GroupElement e8_c() {
  CycloNum t = z(5) + z(5, 4);
  return M(2, {t, 1, 1, -t}).scaled(CycloNum(1) / (z(5, 2) - z(5, 3)));
}

GroupElement cyc_perm() { return M(3, {0, 1, 0, 0, 0, 1, 1, 0, 0}); }
GroupElement phi_2m(long m) { return diag({z(2 * m, -2), z(2 * m), z(2 * m)}); }
GroupElement psi(long k) { return diag({1, z(k), z(k, -1)}); }
GroupElement tau() { return M(3, {1, 0, 0, 0, 0, z(4), 0, z(4), 0}); }

CycloNum sqrt_m3() { return z(3) - z(3, 2); }  // i*sqrt(3)

GroupElement e_S() { return diag({1, z(3), z(3, 2)}); }
GroupElement e_V() {
  return M(3, {1, 1, 1, 1, z(3), z(3, 2), 1, z(3, 2), z(3)}).scaled(CycloNum(1) / sqrt_m3());
}
GroupElement h_S() { return diag({1, z(5, 4), z(5)}); }
GroupElement h_U() { return M(3, {-1, 0, 0, 0, 0, -1, 0, -1, 0}); }
GroupElement h_T() {
  CycloNum s = z(5, 2) + z(5, 3), t = z(5) + z(5, 4);
  return M(3, {1, 1, 1, 2, s, t, 2, t, s}).scaled(CycloNum(1) / cy("s5"));
}
GroupElement i_S() { return diag({z(7), z(7, 2), z(7, 4)}); }
GroupElement i_R() {
  // i/sqrt(7) = g/7 with g the quadratic gauss sum of 7
  CycloNum g = cy("z7+z7^2+z7^4-z7^3-z7^5-z7^6");
  CycloNum a = z(7, 4) - z(7, 3), b = z(7, 2) - z(7, 5), c = z(7) - z(7, 6);
  return M(3, {a, b, c, b, c, a, c, a, b}).scaled(g / CycloNum(7));
}
GroupElement w_scalar() { return diag({z(3), z(3), z(3)}); }

using Builder = std::function<std::vector<GroupElement>(const Params&)>;

struct Family {
  CatalogEntry entry;
  Builder build;
};

const std::vector<Family>& families() {
  static const std::vector<Family> f = [] {
    std::vector<Family> v;
    auto add = [&](std::string name, int dim, std::vector<std::string> params, std::vector<std::string> aliases,
                   std::string constraint, Builder b) {
      v.push_back({{std::move(name), dim, std::move(params), std::move(aliases), std::move(constraint), false},
                   std::move(b)});
    };
    add("A_cyclic", 2, {"j"}, {"Asl2"}, "j >= 1", [](const Params& p) {
      long j = need(p, "j");
      if (j < 1) invalid("j >= 1");
      return std::vector<GroupElement>{diag({z(j), z(j, -1)})};
    });
    add("D_binary", 2, {"n"}, {"Dsl2"}, "n >= 2", [](const Params& p) {
      long n = need(p, "n");
      if (n < 2) invalid("n >= 2");
      return std::vector<GroupElement>{diag({z(2 * n), z(2 * n, -1)}), sl2_b()};
    });
    add("E6", 2, {}, {"E6sl2"}, "", [](const Params&) {
      GroupElement a = sl2_a8();
      return std::vector<GroupElement>{a * a, sl2_b(), sl2_c()};
    });
    add("E7", 2, {}, {"E7sl2"}, "",
        [](const Params&) { return std::vector<GroupElement>{sl2_a8(), sl2_b(), sl2_c()}; });
    add("E8", 2, {}, {"E8sl2"}, "",
        [](const Params&) { return std::vector<GroupElement>{e8_a(), e8_b(), e8_c()}; });

    add("A1", 3, {"j"}, {}, "j >= 1", [](const Params& p) {
      long j = need(p, "j");
      if (j < 1) invalid("j >= 1");
      return std::vector<GroupElement>{diag({z(j), 1, z(j, -1)})};
    });
    add("A2", 3, {"j1", "j2"}, {}, "j1 >= j2 >= 2", [](const Params& p) {
      long j1 = need(p, "j1"), j2 = need(p, "j2");
      if (!(j1 >= j2 && j2 >= 2)) invalid("j1 >= j2 >= 2");
      return std::vector<GroupElement>{diag({z(j1), 1, z(j1, -1)}), diag({1, z(j2), z(j2, -1)})};
    });
    add("BDa", 3, {"q", "n"}, {}, "1 < q < n, gcd(n,q) = 1, n-q odd", [](const Params& p) {
      long q = need(p, "q"), n = need(p, "n");
      if (!(1 < q && q < n)) invalid("1 < q < n");
      if (nt::gcd(n, q) != 1) invalid("gcd(n,q) = 1");
      if ((n - q) % 2 == 0) invalid("n-q odd");
      return std::vector<GroupElement>{psi(2 * q), tau(), phi_2m(n - q)};
    });
    add("BTa", 3, {"m"}, {}, "m = 1 or 5 mod 6", [](const Params& p) {
      long m = need(p, "m");
      if (m < 1 || (m % 6 != 1 && m % 6 != 5)) invalid("m = 1 or 5 mod 6");
      return std::vector<GroupElement>{psi(4), tau(), block(sl2_c()), phi_2m(m)};
    });
    add("BO", 3, {"m"}, {}, "gcd(m,6) = 1", [](const Params& p) {
      long m = need(p, "m");
      if (m < 1 || nt::gcd(m, 6) != 1) invalid("gcd(m,6) = 1");
      return std::vector<GroupElement>{psi(8), tau(), block(sl2_c()), phi_2m(m)};
    });
    add("BI", 3, {"m"}, {}, "gcd(m,30) = 1", [](const Params& p) {
      long m = need(p, "m");
      if (m < 1 || nt::gcd(m, 30) != 1) invalid("gcd(m,30) = 1");
      GroupElement mu = diag({1, -z(5, 3), -z(5, 2)});
      GroupElement tau_i = M(3, {1, 0, 0, 0, 0, 1, 0, -1, 0});
      return std::vector<GroupElement>{mu, tau_i, block(e8_c()), phi_2m(m)};
    });
    add("C", 3, {"m"}, {}, "m >= 2", [](const Params& p) {
      long m = need(p, "m");
      if (m < 2) invalid("m >= 2");
      return std::vector<GroupElement>{diag({z(m), 1, z(m, -1)}), cyc_perm()};
    });
    add("D_example", 3, {}, {"D"}, "", [](const Params&) {
      return std::vector<GroupElement>{diag({1, -1, -1}), cyc_perm(), M(3, {-1, 0, 0, 0, 0, 1, 0, 1, 0})};
    });
    add("E", 3, {}, {}, "", [](const Params&) { return std::vector<GroupElement>{e_S(), cyc_perm(), e_V()}; });
    add("F", 3, {}, {}, "", [](const Params&) {
      GroupElement P = M(3, {1, 1, z(3, 2), 1, z(3), z(3), z(3), 1, z(3)}).scaled(CycloNum(1) / sqrt_m3());
      return std::vector<GroupElement>{e_S(), cyc_perm(), e_V(), P};
    });
    add("G", 3, {}, {}, "", [](const Params&) {
      GroupElement U = diag({z(9, 2), z(9, 2), z(9, 2) * z(3)});
      return std::vector<GroupElement>{e_S(), cyc_perm(), e_V(), U};
    });
    add("H", 3, {}, {}, "", [](const Params&) { return std::vector<GroupElement>{h_S(), h_U(), h_T()}; });
    add("I", 3, {}, {}, "", [](const Params&) { return std::vector<GroupElement>{i_S(), cyc_perm(), i_R()}; });
    add("J", 3, {}, {}, "",
        [](const Params&) { return std::vector<GroupElement>{h_S(), h_U(), h_T(), w_scalar()}; });
    add("K", 3, {}, {}, "",
        [](const Params&) { return std::vector<GroupElement>{i_S(), cyc_perm(), i_R(), w_scalar()}; });
    add("L", 3, {}, {}, "", [](const Params&) {
      CycloNum s = z(5, 2) + z(5, 3), t = z(5) + z(5, 4);
      CycloNum i15 = sqrt_m3() * cy("s5");
      CycloNum l1 = (CycloNum(-1) + i15) / CycloNum(4), l2 = l1.conj();
      GroupElement V = M(3, {1, l1, l1, CycloNum(2) * l2, s, t, CycloNum(2) * l2, t, s}).scaled(CycloNum(1) / cy("s5"));
      return std::vector<GroupElement>{h_S(), h_U(), h_T(), V};
    });
    for (auto& fam : v) fam.entry.has_expected = resources::expected_files().count(fam.entry.name) > 0;
    return v;
  }();
  return f;
}

const Family& find_family(const std::string& name) {
  for (const auto& f : families()) {
    if (f.entry.name == name) return f;
    for (const auto& a : f.entry.aliases)
      if (a == name) return f;
  }
  throw DomainError("unknown preset '" + name + "'");
}

}  // namespace

std::string Preset::label() const {
  if (params.empty()) return name;
  std::string s = name + "(";
  bool first = true;
  for (const auto& p : find_family(name).entry.params) {
    if (!first) s += ",";
    s += p + "=" + std::to_string(params.at(p));
    first = false;
  }
  return s + ")";
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = [] {
    std::vector<CatalogEntry> v;
    for (const auto& f : families()) v.push_back(f.entry);
    return v;
  }();
  return c;
}

Preset build(const std::string& name, const Params& params) {
  const Family& f = find_family(name);
  for (const auto& [k, val] : params)
    if (std::find(f.entry.params.begin(), f.entry.params.end(), k) == f.entry.params.end())
      invalid("unknown parameter " + k + " for " + f.entry.name);
  Preset p;
  p.name = f.entry.name;
  p.params = params;
  p.dim = f.entry.dim;
  p.generators = f.build(params);
  p.expected = expected_data(p.name);
  return p;
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) invalid("expected k=v, got '" + it + "'");
    try {
      std::size_t used = 0;
      long v = std::stol(it.substr(eq + 1), &used);
      if (used != it.size() - eq - 1) throw std::invalid_argument(it);
      p[it.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      invalid("non-integer value in '" + it + "'");
    }
  }
  return p;
}

std::optional<nlohmann::json> expected_data(const std::string& canonical_name) {
  const auto& files = resources::expected_files();
  auto it = files.find(canonical_name);
  if (it == files.end()) return std::nullopt;
  return nlohmann::json::parse(it->second);
}

std::optional<std::vector<int>> ref_perm(const Preset& p) {
  if (!p.expected) return std::nullopt;
  if (p.expected->contains("ref_perm")) return p.expected->at("ref_perm").get<std::vector<int>>();
  // B families only list the m = 1 member
  auto m = p.params.find("m");
  if (m != p.params.end() && m->second == 1 && p.expected->contains("m1"))
    return p.expected->at("m1").at("ref_perm").get<std::vector<int>>();
  return std::nullopt;
}

}  // namespace mckay3
