#include "mckay3/chartab.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "mckay3/dixon.hpp"
#include "mckay3/errors.hpp"
#include "mckay3/ntheory.hpp"

namespace mckay3 {

namespace {

std::string row_key(const ClassFunction& f) {
  std::string k;
  for (const auto& x : f) {
    k += x.key();
    k += '|';
  }
  return k;
}

bool is_zero(const ClassFunction& f) {
  return std::all_of(f.begin(), f.end(), [](const CycloNum& x) { return x.is_zero(); });
}

ClassFunction product(const ClassFunction& a, const ClassFunction& b) {
  ClassFunction r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] * b[j];
  return r;
}

ClassFunction conjugate(const ClassFunction& a) {
  ClassFunction r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j].conj();
  return r;
}

void axpy(ClassFunction& y, long c, const ClassFunction& x) {
  if (c == 0) return;
  CycloNum cc(c);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!x[j].is_zero()) y[j] -= cc * x[j];
}

std::int64_t field_conductor(const ClassFunction& f) {
  std::int64_t n = 1;
  for (const auto& x : f) n = nt::lcm(n, x.conductor());
  return n;
}

// Irreducibles are extracted from a pool of virtual characters: everything
// is kept orthogonal to the found set, and the pool is size-reduced against
// itself so that norm-1 vectors (= +-irreducibles) surface.
class Peeler {
 public:
  Peeler(const FiniteMatrixGroup& G, const ConjClassSet& C)
      : G_(G), C_(C), sizes_(C.sizes), order_(static_cast<long>(G.order())), k_(C.count()) {}

  std::vector<ClassFunction> run() {
    ClassFunction triv(k_, CycloNum(1));
    chi_ = natural_character(G_, C_);
    chibar_ = conjugate(chi_);
    add_irreducible(triv);
    queue_.push_back(chi_);
    queue_.push_back(chibar_);

    // a round is one worklist pull; stop after cap rounds without a new irreducible
    std::size_t stage = 0, idle_rounds = 0;
    const std::size_t cap = 10 * k_;
    while (found_.size() < k_) {
      if (queue_.empty() && !refill(stage)) break;
      std::size_t before = found_.size();
      ClassFunction v = std::move(queue_.front());
      queue_.pop_front();
      add_to_pool(std::move(v));
      idle_rounds = found_.size() > before ? 0 : idle_rounds + 1;
      if (idle_rounds > cap) break;
    }
    stalled_ = found_.size() < k_;
    return found_;
  }

 private:
  long ip(const ClassFunction& a, const ClassFunction& b) const {
    CycloNum s;
    for (std::size_t j = 0; j < k_; ++j) {
      if (a[j].is_zero() || b[j].is_zero()) continue;
      s += CycloNum(sizes_[j]) * a[j] * b[j].conj();
    }
    if (!s.is_rational()) throw ConsistencyError("inner product of virtual characters is not rational");
    Rational q = s.to_rational() / order_;
    if (q.get_den() != 1) throw ConsistencyError("inner product of virtual characters is not an integer");
    return q.get_num().get_si();
  }

  ClassFunction project(ClassFunction v) const {
    for (const auto& f : found_) axpy(v, ip(v, f), f);
    return v;
  }

  void add_irreducible(const ClassFunction& f0) {
    std::vector<ClassFunction> todo{f0};
    while (!todo.empty()) {
      ClassFunction f = std::move(todo.back());
      todo.pop_back();
      if (!found_keys_.insert(row_key(f)).second) continue;
      found_.push_back(f);
      queue_.push_back(product(f, chi_));
      queue_.push_back(product(f, chibar_));
      // galois conjugates of an irreducible are irreducible
      std::int64_t n = field_conductor(f);
      for (std::int64_t a = 2; a < n; ++a) {
        if (nt::gcd(a, n) != 1) continue;
        ClassFunction g(k_);
        for (std::size_t j = 0; j < k_; ++j) g[j] = f[j].galois(a);
        if (!found_keys_.count(row_key(g))) todo.push_back(std::move(g));
      }
      // keep the pool orthogonal to f
      std::vector<long> c(pool_.size());
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        c[i] = ip(pool_[i], f);
        axpy(pool_[i], c[i], f);
      }
      for (std::size_t i = 0; i < pool_.size(); ++i)
        for (std::size_t j = 0; j < pool_.size(); ++j) gram_[i][j] -= c[i] * c[j];
    }
    drop_zeros();
    harvest();
  }

  void add_to_pool(ClassFunction v) {
    v = project(std::move(v));
    if (is_zero(v)) return;
    std::vector<long> row;
    for (const auto& p : pool_) row.push_back(ip(v, p));
    long nv = ip(v, v);
    for (std::size_t i = 0; i < pool_.size(); ++i) gram_[i].push_back(row[i]);
    row.push_back(nv);
    gram_.push_back(std::move(row));
    pool_.push_back(std::move(v));
    reduce();
    harvest();
  }

  void reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < pool_.size(); ++i)
        for (std::size_t j = 0; j < pool_.size(); ++j) {
          if (i == j || gram_[j][j] == 0) continue;
          long g = gram_[i][j], nj = gram_[j][j];
          // nearest integer to g / nj
          long q = (2 * g + (g >= 0 ? nj : -nj)) / (2 * nj);
          if (q == 0) continue;
          long ni = gram_[i][i] - 2 * q * g + q * q * nj;
          if (ni >= gram_[i][i]) continue;
          axpy(pool_[i], q, pool_[j]);
          for (std::size_t t = 0; t < pool_.size(); ++t)
            if (t != i) {
              gram_[i][t] -= q * gram_[j][t];
              gram_[t][i] = gram_[i][t];
            }
          gram_[i][i] = ni;
          changed = true;
        }
      drop_zeros();
    }
  }

  void drop_zeros() {
    for (std::size_t i = pool_.size(); i-- > 0;) {
      if (gram_[i][i] != 0) continue;
      pool_.erase(pool_.begin() + static_cast<long>(i));
      gram_.erase(gram_.begin() + static_cast<long>(i));
      for (auto& r : gram_) r.erase(r.begin() + static_cast<long>(i));
    }
  }

  void harvest() {
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (gram_[i][i] != 1) continue;
      ClassFunction f = pool_[i];
      if (f[0].to_rational() < 0)
        for (auto& x : f) x = -x;
      add_irreducible(f);  // also projects f out of the pool and recurses
      return;
    }
  }

  // Further sources once the queue runs dry. Returns false when exhausted.
  bool refill(std::size_t& stage) {
    while (true) {
      switch (stage) {
        case 0: {
          // symmetric and alternating squares
          auto pm = power_map(G_, C_, 2);
          for (; sq_done_ < found_.size(); ++sq_done_) {
            const auto& f = found_[sq_done_];
            ClassFunction s(k_), a(k_);
            for (std::size_t j = 0; j < k_; ++j) {
              CycloNum f2 = f[j] * f[j], fp = f[static_cast<std::size_t>(pm[j])];
              s[j] = (f2 + fp) / CycloNum(2);
              a[j] = (f2 - fp) / CycloNum(2);
            }
            queue_.push_back(std::move(s));
            queue_.push_back(std::move(a));
          }
          if (!queue_.empty()) return true;
          stage = 1;
          break;
        }
        case 1: {
          // products of found pairs
          bool any = false;
          for (std::size_t i = 0; i < found_.size(); ++i)
            for (std::size_t j = i; j < found_.size(); ++j)
              if (pairs_done_.insert({i, j}).second) {
                queue_.push_back(product(found_[i], found_[j]));
                any = true;
              }
          if (any) {
            stage = 0;
            return true;
          }
          stage = 2;
          break;
        }
        case 2: {
          // characters induced from cyclic subgroups, once
          stage = 3;
          if (induced_done_) break;
          induced_done_ = true;
          for (int r : C_.reps) induce_from(r);
          if (!queue_.empty()) return true;
          break;
        }
        case 3: {
          // pool vectors against the natural character and galois images
          if (pool_.empty()) return false;
          std::size_t n = pool_.size();
          for (std::size_t i = 0; i < n; ++i) {
            queue_.push_back(product(pool_[i], chi_));
            queue_.push_back(conjugate(pool_[i]));
            std::int64_t m = field_conductor(pool_[i]);
            for (std::int64_t a = 2; a < m; ++a) {
              if (nt::gcd(a, m) != 1) continue;
              ClassFunction g(k_);
              for (std::size_t j = 0; j < k_; ++j) g[j] = pool_[i][j].galois(a);
              queue_.push_back(std::move(g));
            }
          }
          stage = 0;
          return true;
        }
        default:
          return false;
      }
    }
  }

  // Ind_<g>^G of lambda^d for each divisor d of m = o(g), lambda(g) = zeta_m.
  void induce_from(int g) {
    long m = G_.order_of(g);
    std::vector<int> cls(static_cast<std::size_t>(m));
    int x = 0;
    for (long j = 0; j < m; ++j) {
      cls[static_cast<std::size_t>(j)] = C_.class_of[static_cast<std::size_t>(x)];
      x = G_.multiply(g, x);
    }
    for (std::int64_t d : nt::divisors(m)) {
      if (d == m && m > 1) continue;
      ClassFunction f(k_);
      for (long j = 0; j < m; ++j) f[static_cast<std::size_t>(cls[static_cast<std::size_t>(j)])] += CycloNum::zeta(m, d * j);
      for (std::size_t c = 0; c < k_; ++c) {
        if (f[c].is_zero()) continue;
        Rational q(order_, sizes_[c] * m);
        q.canonicalize();
        f[c] *= CycloNum(q);
      }
      queue_.push_back(std::move(f));
    }
  }

  bool induced_done_ = false;

 public:
  bool stalled_ = false;

 private:
  const FiniteMatrixGroup& G_;
  const ConjClassSet& C_;
  std::vector<long> sizes_;
  long order_;
  std::size_t k_;
  ClassFunction chi_, chibar_;
  std::vector<ClassFunction> found_;
  std::set<std::string> found_keys_;
  std::vector<ClassFunction> pool_;
  std::vector<std::vector<long>> gram_;
  std::deque<ClassFunction> queue_;
  std::size_t sq_done_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> pairs_done_;
};

}  // namespace

std::vector<int> CharacterTable::conj_perm() const {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < rows.size(); ++i) idx[row_key(rows[i])] = static_cast<int>(i);
  std::vector<int> p(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto it = idx.find(row_key(conjugate(rows[i])));
    if (it == idx.end()) throw ConsistencyError("conjugate character missing from table");
    p[i] = it->second;
  }
  return p;
}

ClassFunction natural_character(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  ClassFunction f;
  for (int r : C.reps) f.push_back(G.elements[static_cast<std::size_t>(r)].trace());
  return f;
}

CycloNum inner_product(const ClassFunction& phi, const ClassFunction& psi, const std::vector<long>& sizes,
                       long order) {
  if (phi.size() != psi.size() || phi.size() != sizes.size()) throw DomainError("class function length mismatch");
  CycloNum s;
  for (std::size_t j = 0; j < phi.size(); ++j) s += CycloNum(sizes[j]) * phi[j] * psi[j].conj();
  return s / CycloNum(order);
}

CycloNum inner_product(const ClassFunction& phi, const ClassFunction& psi, const ConjClassSet& C) {
  long order = std::accumulate(C.sizes.begin(), C.sizes.end(), 0L);
  return inner_product(phi, psi, C.sizes, order);
}

std::vector<int> power_map(const FiniteMatrixGroup& G, const ConjClassSet& C, long k) {
  std::vector<int> pm;
  for (int r : C.reps) pm.push_back(C.class_of[static_cast<std::size_t>(G.power(r, k))]);
  return pm;
}

CharacterTable character_table(const FiniteMatrixGroup& G, const ConjClassSet& C) {
  auto rows = Peeler(G, C).run();
  if (rows.size() < C.count()) {
    // peeling stalled: complete with the modular table and check it against what was peeled
    auto all = dixon_characters(G, C);
    std::set<std::string> keys;
    for (const auto& r : all) keys.insert(row_key(r));
    for (const auto& r : rows)
      if (!keys.count(row_key(r))) throw ConsistencyError("peeling did not terminate");
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i; j < all.size(); ++j)
        if (inner_product(all[i], all[j], C) != CycloNum(i == j ? 1 : 0))
          throw ConsistencyError("peeling did not terminate");
    ClassFunction triv(C.count(), CycloNum(1));
    std::stable_partition(all.begin(), all.end(), [&](const ClassFunction& r) { return r == triv; });
    rows = std::move(all);
  }
  std::vector<std::pair<long, std::string>> keys;
  for (const auto& r : rows) keys.emplace_back(r[0].to_rational().get_num().get_si(), row_key(r));
  std::vector<std::size_t> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin() + 1, idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  CharacterTable T;
  T.order = static_cast<long>(G.order());
  T.class_sizes = C.sizes;
  for (std::size_t i : idx) {
    T.rows.push_back(rows[i]);
    T.degrees.push_back(keys[i].first);
  }
  long sq = 0;
  for (long d : T.degrees) sq += d * d;
  if (sq != T.order) throw ConsistencyError("sum of squared degrees differs from group order");
  return T;
}

nlohmann::json to_json(const CharacterTable& T) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : T.rows) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : r) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return {{"classes", T.class_sizes}, {"rows", rows}, {"degrees", T.degrees}, {"order", T.order}};
}

CharacterTable table_from_json(const nlohmann::json& j) {
  CharacterTable T;
  T.class_sizes = j.at("classes").get<std::vector<long>>();
  T.degrees = j.at("degrees").get<std::vector<long>>();
  T.order = j.contains("order") ? j.at("order").get<long>()
                                : std::accumulate(T.class_sizes.begin(), T.class_sizes.end(), 0L);
  for (const auto& row : j.at("rows")) {
    ClassFunction f;
    for (const auto& x : row) f.push_back(cyclo_from_json(x));
    T.rows.push_back(std::move(f));
  }
  if (T.rows.size() != T.class_sizes.size() || T.degrees.size() != T.rows.size())
    throw ConsistencyError("character table is not square");
  return T;
}

}  // namespace mckay3
