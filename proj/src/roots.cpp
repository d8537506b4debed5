#include "mckay3/roots.hpp"

#include <algorithm>
#include <sstream>

#include "mckay3/errors.hpp"

namespace mckay3 {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix I(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

using Adj = std::vector<std::vector<bool>>;

Adj conflict_graph(const IntMatrix& C) {
  const std::size_t n = C.size();
  Adj a(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (C[i][j] != 0 || C[j][i] != 0)) a[i][j] = true;
  return a;
}

// greedy clique, seeded from each vertex; a lower bound on the chromatic number
int clique_bound(const Adj& a) {
  const int n = static_cast<int>(a.size());
  int best = n ? 1 : 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> cl{s};
    for (int v = 0; v < n; ++v) {
      if (v == s) continue;
      bool ok = std::all_of(cl.begin(), cl.end(), [&](int c) { return a[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]; });
      if (ok) cl.push_back(v);
    }
    best = std::max(best, static_cast<int>(cl.size()));
  }
  return best;
}

class Colorer {
 public:
  Colorer(const Adj& a, long cap) : a_(a), n_(static_cast<int>(a.size())), cap_(cap) {}

  // DSATUR backtracking for a k-coloring. 1 found, 0 none exists, -1 budget exhausted.
  int try_k(int k, std::vector<int>& out) {
    color_.assign(static_cast<std::size_t>(n_), -1);
    nodes_ = 0;
    k_ = k;
    int r = search(0);
    if (r == 1) out = color_;
    return r;
  }

  std::vector<int> greedy() {
    color_.assign(static_cast<std::size_t>(n_), -1);
    for (int step = 0; step < n_; ++step) {
      int v = pick();
      int c = 0;
      while (!allowed(v, c)) ++c;
      color_[static_cast<std::size_t>(v)] = c;
    }
    return color_;
  }

 private:
  bool allowed(int v, int c) const {
    for (int u = 0; u < n_; ++u)
      if (a_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] && color_[static_cast<std::size_t>(u)] == c) return false;
    return true;
  }

  // max saturation, then max degree, then lowest index
  int pick() const {
    int best = -1, bs = -1, bd = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[static_cast<std::size_t>(v)] >= 0) continue;
      std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
      int sat = 0, deg = 0;
      for (int u = 0; u < n_; ++u) {
        if (!a_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) continue;
        int c = color_[static_cast<std::size_t>(u)];
        if (c >= 0 && !seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = true;
          ++sat;
        }
        if (c < 0) ++deg;
      }
      if (sat > bs || (sat == bs && deg > bd)) {
        best = v;
        bs = sat;
        bd = deg;
      }
    }
    return best;
  }

  int search(int placed) {
    if (placed == n_) return 1;
    if (cap_ > 0 && ++nodes_ > cap_) return -1;
    int v = pick();
    int used = 0;
    for (int c : color_) used = std::max(used, c + 1);
    bool exhausted = false;
    // a fresh color is tried only once: colors are interchangeable
    for (int c = 0; c < std::min(k_, used + 1); ++c) {
      if (!allowed(v, c)) continue;
      color_[static_cast<std::size_t>(v)] = c;
      int r = search(placed + 1);
      if (r == 1) return 1;
      if (r == -1) exhausted = true;
      color_[static_cast<std::size_t>(v)] = -1;
      if (exhausted) return -1;
    }
    return 0;
  }

  const Adj& a_;
  int n_;
  long cap_;
  long nodes_ = 0;
  int k_ = 0;
  std::vector<int> color_;
};

// colors renumbered by first appearance in index order
std::vector<std::vector<int>> classes_of(const std::vector<int>& color) {
  std::vector<int> relabel;
  std::vector<std::vector<int>> sets;
  for (std::size_t v = 0; v < color.size(); ++v) {
    int c = color[v];
    if (static_cast<std::size_t>(c) >= relabel.size()) relabel.resize(static_cast<std::size_t>(c) + 1, -1);
    if (relabel[static_cast<std::size_t>(c)] < 0) {
      relabel[static_cast<std::size_t>(c)] = static_cast<int>(sets.size());
      sets.emplace_back();
    }
    sets[static_cast<std::size_t>(relabel[static_cast<std::size_t>(c)])].push_back(static_cast<int>(v));
  }
  return sets;
}

IntMatrix product_in_order(const std::vector<IntMatrix>& s, const std::vector<int>& order, std::size_t n) {
  IntMatrix t = identity(n);
  for (int k : order) t = multiply(t, s[static_cast<std::size_t>(k)]);
  return t;
}

}  // namespace

std::vector<IntMatrix> reflections(const IntMatrix& C) {
  const std::size_t n = C.size();
  std::vector<IntMatrix> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (C[k].size() != n) throw DomainError("Cartan matrix must be square");
    IntMatrix s = identity(n);
    for (std::size_t j = 0; j < n; ++j) s[k][j] -= C[k][j];
    out.push_back(std::move(s));
  }
  return out;
}

ReflectionSet min_partition(const IntMatrix& C, long node_cap) {
  const std::size_t n = C.size();
  ReflectionSet R;
  R.s = reflections(C);
  if (n == 0) return R;
  Adj a = conflict_graph(C);
  Colorer col(a, n <= 40 ? 0 : node_cap);
  std::vector<int> best = col.greedy();
  int ub = *std::max_element(best.begin(), best.end()) + 1;
  const int lb = clique_bound(a);
  // smallest k first, so the first success is minimal
  for (int k = lb; k < ub; ++k) {
    std::vector<int> c;
    int r = col.try_k(k, c);
    if (r == 1) {
      best = c;
      ub = k;
      break;
    }
    if (r == -1) {
      R.certified = false;
      break;
    }
  }
  if (R.certified) {
    // canonical coloring at the optimum
    std::vector<int> c;
    if (col.try_k(ub, c) == 1) best = c;
  }
  R.p = ub;
  R.partition = classes_of(best);

  for (const auto& S : R.partition) {
    for (int i : S)
      for (int j : S)
        if (i != j && a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) throw ConsistencyError("identity check failed");
    IntMatrix t = product_in_order(R.s, S, n);
    std::vector<int> rev(S.rbegin(), S.rend());
    if (t != product_in_order(R.s, rev, n)) throw ConsistencyError("identity check failed");
    R.tau.push_back(std::move(t));
  }
  // C = p I - sum tau
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long v = i == j ? R.p : 0;
      for (const auto& t : R.tau) v -= t[i][j];
      if (v != C[i][j]) throw ConsistencyError("identity check failed");
    }
  return R;
}

std::string partition_dot(const IntMatrix& C, const ReflectionSet& R) {
  std::vector<int> set_of(C.size(), -1);
  for (std::size_t l = 0; l < R.partition.size(); ++l)
    for (int k : R.partition[l]) set_of[static_cast<std::size_t>(k)] = static_cast<int>(l);
  std::ostringstream os;
  os << "graph reflections {\n";
  for (std::size_t k = 0; k < C.size(); ++k) os << "  " << k << " [label=\"s" << k << "\", set=" << set_of[k] << "];\n";
  Adj a = conflict_graph(C);
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j)
      if (a[i][j]) os << "  " << i << " -- " << j << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const ReflectionSet& R) {
  nlohmann::json j = {{"p", R.p}, {"sets", R.partition}};
  if (!R.certified) j["heuristic_only"] = true;
  return j;
}

}  // namespace mckay3
