#include "mckay3/grp.hpp"

#include <algorithm>
#include <numeric>

#include "mckay3/errors.hpp"

namespace mckay3 {

namespace {

std::string make_key(const std::vector<CycloNum>& e) {
  std::string k;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) k += '|';
    k += e[i].key();
  }
  return k;
}

}  // namespace

GroupElement::GroupElement(int dim, std::vector<CycloNum> entries) : dim_(dim), e_(std::move(entries)) {
  if (dim < 1 || e_.size() != static_cast<std::size_t>(dim * dim))
    throw DomainError("matrix shape does not match dimension");
  key_ = make_key(e_);
}

GroupElement GroupElement::identity(int dim) {
  std::vector<CycloNum> e(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i * dim + i)] = CycloNum(1);
  return GroupElement(dim, std::move(e));
}

GroupElement GroupElement::diagonal(const std::vector<CycloNum>& d) {
  int dim = static_cast<int>(d.size());
  std::vector<CycloNum> e(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i * dim + i)] = d[static_cast<std::size_t>(i)];
  return GroupElement(dim, std::move(e));
}

CycloNum GroupElement::trace() const {
  CycloNum s;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

CycloNum GroupElement::det() const {
  const auto& a = *this;
  if (dim_ == 1) return a(0, 0);
  if (dim_ == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (dim_ == 3)
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  throw DomainError("unsupported matrix dimension");
}

CycloNum GroupElement::minor_sum() const {
  CycloNum s;
  const auto& a = *this;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) s += a(i, i) * a(j, j) - a(i, j) * a(j, i);
  return s;
}

GroupElement GroupElement::inverse() const {
  const auto& a = *this;
  CycloNum d = det();
  if (d.is_zero()) throw DomainError("singular matrix");
  CycloNum di = d.inverse();
  std::vector<CycloNum> r(e_.size());
  auto at = [&](int i, int j) -> CycloNum& { return r[static_cast<std::size_t>(i * dim_ + j)]; };
  if (dim_ == 1) {
    at(0, 0) = di;
  } else if (dim_ == 2) {
    at(0, 0) = a(1, 1) * di;
    at(0, 1) = -a(0, 1) * di;
    at(1, 0) = -a(1, 0) * di;
    at(1, 1) = a(0, 0) * di;
  } else if (dim_ == 3) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cofactor of (j, i)
        int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        at(i, j) = (a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0)) * di;
      }
  } else {
    throw DomainError("unsupported matrix dimension");
  }
  return GroupElement(dim_, std::move(r));
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (dim_ != o.dim_) throw DomainError("dimension mismatch");
  std::vector<CycloNum> r(e_.size());
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const CycloNum& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        const CycloNum& y = o(k, j);
        if (!y.is_zero()) r[static_cast<std::size_t>(i * dim_ + j)] += x * y;
      }
    }
  return GroupElement(dim_, std::move(r));
}

GroupElement GroupElement::scaled(const CycloNum& c) const {
  std::vector<CycloNum> r = e_;
  for (auto& x : r) x *= c;
  return GroupElement(dim_, std::move(r));
}

int FiniteMatrixGroup::index_of(const GroupElement& g) const {
  auto it = lookup.find(g.key());
  return it == lookup.end() ? -1 : it->second;
}

int FiniteMatrixGroup::multiply(int x, int y) const {
  // x = g_a1 g_a2 ... g_ak, applied right to left
  int r = y;
  thread_local std::vector<int> word;
  word.clear();
  for (int z = x; parent[static_cast<std::size_t>(z)] >= 0; z = parent[static_cast<std::size_t>(z)])
    word.push_back(parent_gen[static_cast<std::size_t>(z)]);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = left[static_cast<std::size_t>(*it)][static_cast<std::size_t>(r)];
  return r;
}

int FiniteMatrixGroup::power(int x, long k) const {
  if (k < 0) return power(inverse[static_cast<std::size_t>(x)], -k);
  int r = 0, b = x;
  while (k) {
    if (k & 1) r = multiply(r, b);
    b = multiply(b, b);
    k >>= 1;
  }
  return r;
}

long FiniteMatrixGroup::order_of(int x) const {
  long k = 1;
  for (int y = x; y != 0; y = multiply(y, x)) ++k;
  return k;
}

long FiniteMatrixGroup::exponent() const {
  long e = 1;
  for (std::size_t x = 0; x < order(); ++x) e = std::lcm(e, order_of(static_cast<int>(x)));
  return e;
}

FiniteMatrixGroup enumerate(const std::vector<GroupElement>& generators, std::size_t cap) {
  if (generators.empty()) throw DomainError("no generators");
  int dim = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != dim) throw DomainError("generators have different dimensions");
    if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
    if (g.det() != CycloNum(1)) throw DomainError("determinant ≠ 1");
  }
  FiniteMatrixGroup G;
  G.dim = dim;
  G.elements.push_back(GroupElement::identity(dim));
  G.lookup.emplace(G.elements[0].key(), 0);
  G.left.assign(generators.size(), {});
  G.parent.push_back(-1);
  G.parent_gen.push_back(-1);
  for (std::size_t x = 0; x < G.elements.size(); ++x) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      GroupElement y = generators[g] * G.elements[x];
      auto [it, fresh] = G.lookup.emplace(y.key(), static_cast<int>(G.elements.size()));
      if (fresh) {
        if (G.elements.size() >= cap) throw DomainError("group exceeds cap");
        G.elements.push_back(std::move(y));
        G.parent.push_back(static_cast<int>(x));
        G.parent_gen.push_back(static_cast<int>(g));
      }
      G.left[g].push_back(it->second);
    }
  }
  for (const auto& g : generators) G.generators.push_back(G.lookup.at(g.key()));

  // x^-1 from the adjugate; pairs are filled together.
  G.inverse.assign(G.order(), -1);
  for (std::size_t x = 0; x < G.order(); ++x) {
    if (G.inverse[x] >= 0) continue;
    int y = G.index_of(G.elements[x].inverse());
    if (y < 0) throw ConsistencyError("enumerated set is not closed under inverse");
    G.inverse[x] = y;
    G.inverse[static_cast<std::size_t>(y)] = static_cast<int>(x);
  }
  return G;
}

ConjClassSet conjugacy_classes(const FiniteMatrixGroup& G) {
  const std::size_t n = G.order();
  // g x g^-1 = L_g[ inv[ L_g[ inv[x] ] ] ]
  std::vector<std::vector<int>> conj(G.left.size(), std::vector<int>(n));
  for (std::size_t g = 0; g < G.left.size(); ++g) {
    const auto& L = G.left[g];
    for (std::size_t x = 0; x < n; ++x)
      conj[g][x] = L[static_cast<std::size_t>(G.inverse[static_cast<std::size_t>(L[static_cast<std::size_t>(G.inverse[x])])])];
  }

  std::vector<int> orbit_of(n, -1);
  std::vector<std::vector<int>> orbits;
  for (std::size_t s = 0; s < n; ++s) {
    if (orbit_of[s] >= 0) continue;
    int id = static_cast<int>(orbits.size());
    std::vector<int> orb{static_cast<int>(s)};
    orbit_of[s] = id;
    for (std::size_t h = 0; h < orb.size(); ++h)
      for (const auto& c : conj) {
        int y = c[static_cast<std::size_t>(orb[h])];
        if (orbit_of[static_cast<std::size_t>(y)] < 0) {
          orbit_of[static_cast<std::size_t>(y)] = id;
          orb.push_back(y);
        }
      }
    orbits.push_back(std::move(orb));
  }

  struct Info {
    long size;
    std::string trace_key, min_key;
    int min_elem;
    int orbit;
  };
  std::vector<Info> info;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const auto& orb = orbits[o];
    int best = orb[0];
    for (int x : orb)
      if (G.elements[static_cast<std::size_t>(x)].key() < G.elements[static_cast<std::size_t>(best)].key()) best = x;
    info.push_back({static_cast<long>(orb.size()), G.elements[static_cast<std::size_t>(best)].trace().key(),
                    G.elements[static_cast<std::size_t>(best)].key(), best, static_cast<int>(o)});
  }
  // identity is element 0, so its orbit is orbit 0
  std::sort(info.begin() + 1, info.end(), [](const Info& a, const Info& b) {
    if (a.size != b.size) return a.size < b.size;
    if (a.trace_key != b.trace_key) return a.trace_key < b.trace_key;
    return a.min_key < b.min_key;
  });

  ConjClassSet C;
  C.class_of.assign(n, -1);
  for (std::size_t c = 0; c < info.size(); ++c) {
    C.reps.push_back(info[c].min_elem);
    C.sizes.push_back(info[c].size);
    auto members = orbits[static_cast<std::size_t>(info[c].orbit)];
    std::sort(members.begin(), members.end());
    for (int x : members) C.class_of[static_cast<std::size_t>(x)] = static_cast<int>(c);
    C.members.push_back(std::move(members));
  }
  return C;
}

long element_order(const GroupElement& g, long limit) {
  GroupElement id = GroupElement::identity(g.dim());
  GroupElement p = g;
  for (long k = 1; k <= limit; ++k) {
    if (p == id) return k;
    p = p * g;
  }
  throw DomainError("element order exceeds limit");
}

nlohmann::json to_json(const GroupElement& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < g.dim(); ++j) row.push_back(to_json(g(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

GroupElement element_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a non-empty array of rows");
  int dim = static_cast<int>(j.size());
  std::vector<CycloNum> e;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) throw DomainError("matrix must be square");
    for (const auto& x : row) e.push_back(cyclo_from_json(x));
  }
  return GroupElement(dim, std::move(e));
}

nlohmann::json to_json(const FiniteMatrixGroup& G) {
  nlohmann::json j;
  j["dim"] = G.dim;
  j["order"] = G.order();
  j["generators"] = G.generators;
  nlohmann::json els = nlohmann::json::array();
  for (const auto& e : G.elements) els.push_back(to_json(e));
  j["elements"] = std::move(els);
  j["left"] = G.left;
  j["inverse"] = G.inverse;
  j["parent"] = G.parent;
  j["parent_gen"] = G.parent_gen;
  return j;
}

nlohmann::json to_json(const ConjClassSet& C) {
  return {{"class_of", C.class_of}, {"reps", C.reps}, {"sizes", C.sizes}};
}

FiniteMatrixGroup group_from_json(const nlohmann::json& j) {
  FiniteMatrixGroup G;
  G.dim = j.at("dim").get<int>();
  for (const auto& e : j.at("elements")) {
    G.lookup.emplace(element_from_json(e).key(), static_cast<int>(G.elements.size()));
    G.elements.push_back(element_from_json(e));
  }
  G.generators = j.at("generators").get<std::vector<int>>();
  G.left = j.at("left").get<std::vector<std::vector<int>>>();
  G.inverse = j.at("inverse").get<std::vector<int>>();
  G.parent = j.at("parent").get<std::vector<int>>();
  G.parent_gen = j.at("parent_gen").get<std::vector<int>>();
  if (G.lookup.size() != G.elements.size() || G.inverse.size() != G.elements.size() ||
      G.parent.size() != G.elements.size() ||
      G.left.size() != G.generators.size())
    throw ConsistencyError("cached group is malformed");
  return G;
}

ConjClassSet classes_from_json(const nlohmann::json& j) {
  ConjClassSet C;
  C.class_of = j.at("class_of").get<std::vector<int>>();
  C.reps = j.at("reps").get<std::vector<int>>();
  C.sizes = j.at("sizes").get<std::vector<long>>();
  C.members.assign(C.reps.size(), {});
  for (std::size_t x = 0; x < C.class_of.size(); ++x) {
    auto c = static_cast<std::size_t>(C.class_of[x]);
    if (c >= C.members.size()) throw ConsistencyError("cached class table is malformed");
    C.members[c].push_back(static_cast<int>(x));
  }
  return C;
}

}  // namespace mckay3
