#include "mckay3/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mckay3/errors.hpp"

namespace mckay3 {

namespace fs = std::filesystem;

namespace {

constexpr int kCacheVersion = 1;

// Runs one pipeline stage, prefixing any error with the stage name.
template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw DomainError(std::string(stage) + ": " + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(std::string(stage) + ": " + e.what());
  }
}

nlohmann::json gens_json(const std::vector<GroupElement>& gens) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : gens) j.push_back(to_json(g));
  return j;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Pipeline::Pipeline(std::string label, std::vector<GroupElement> gens, std::string cache_dir)
    : label_(std::move(label)), gens_(std::move(gens)), cache_dir_(std::move(cache_dir)) {
  if (gens_.empty()) throw DomainError("no generators");
  int d = gens_.front().dim();
  if (d != 2 && d != 3) throw DomainError("generators must be 2x2 or 3x3");
  for (const auto& g : gens_) {
    if (g.dim() != d) throw DomainError("generators have mixed sizes");
    if (g.det() != CycloNum(1)) throw DomainError("generator with det ≠ 1");
  }
}

std::string Pipeline::hash() const { return hex(fnv1a(gens_json(gens_).dump())); }

void Pipeline::load_cache() {
  if (cache_tried_) return;
  cache_tried_ = true;
  if (cache_dir_.empty()) return;
  fs::path f = fs::path(cache_dir_) / (hash() + ".json");
  if (!fs::exists(f)) return;
  std::ifstream in(f);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return;  // unreadable cache is ignored and rewritten
  }
  if (j.value("version", 0) != kCacheVersion || j.value("generators", nlohmann::json()) != gens_json(gens_)) return;
  G_ = group_from_json(j.at("group"));
  C_ = classes_from_json(j.at("classes"));
  if (j.contains("table")) T_ = table_from_json(j.at("table"));
  from_cache_ = true;
}

void Pipeline::store_cache() {
  if (cache_dir_.empty() || !G_ || !C_) return;
  fs::create_directories(cache_dir_);
  nlohmann::json j = {{"version", kCacheVersion}, {"generators", gens_json(gens_)}, {"group", to_json(*G_)},
                      {"classes", to_json(*C_)}};
  if (T_) j["table"] = to_json(*T_);
  fs::path f = fs::path(cache_dir_) / (hash() + ".json");
  fs::path tmp = f;
  tmp += ".tmp";
  {
    std::ofstream o(tmp);
    o << j.dump() << "\n";
  }
  fs::rename(tmp, f);
}

const FiniteMatrixGroup& Pipeline::group() {
  load_cache();
  if (!G_) G_ = staged("enumerate", [&] { return enumerate(gens_); });
  return *G_;
}

const ConjClassSet& Pipeline::classes() {
  load_cache();
  if (!C_) {
    C_ = staged("classes", [&] { return conjugacy_classes(group()); });
    store_cache();
  }
  return *C_;
}

const CharacterTable& Pipeline::table() {
  load_cache();
  if (!T_) {
    T_ = staged("chartab", [&] { return character_table(group(), classes()); });
    store_cache();
  }
  return *T_;
}

const McKayData& Pipeline::mckay() {
  if (!M_) M_ = staged("mckay", [&] { return mckay_matrices(table(), natural_character(group(), classes())); });
  return *M_;
}

const RationalBranchingSeries& Pipeline::series() {
  if (!S_) S_ = staged("series", [&] { return closed_form(group(), classes(), table()); });
  return *S_;
}

const ReflectionSet& Pipeline::partition() {
  if (!R_) R_ = staged("partition", [&] { return min_partition(mckay().C); });
  return *R_;
}

// ---------------------------------------------------------------- verify

std::vector<CheckResult> verify_all(Pipeline& P, int level) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool ok, std::string detail = {}) {
    out.push_back({name, ok, std::move(detail)});
  };
  const auto& G = P.group();
  const auto& C = P.classes();
  const auto& T = P.table();
  const auto& M = P.mckay();
  const std::size_t k = T.size();

  bool orth = true;
  for (std::size_t i = 0; i < k && orth; ++i)
    for (std::size_t j = 0; j < k && orth; ++j)
      orth = inner_product(T.rows[i], T.rows[j], C) == CycloNum(i == j ? 1 : 0);
  for (std::size_t a = 0; a < k && orth; ++a)
    for (std::size_t b = 0; b < k && orth; ++b) {
      CycloNum s;
      for (std::size_t i = 0; i < k; ++i) s = s + T.rows[i][a] * T.rows[i][b].conj();
      orth = s == CycloNum(a == b ? static_cast<long>(G.order()) / C.sizes[a] : 0);
    }
  add("character orthogonality", orth);
  long sq = 0;
  for (long d : T.degrees) sq += d * d;
  add("sum of squared degrees", sq == static_cast<long>(G.order()));

  add("A2 is the transpose of A1", M.A2 == transpose(M.A1));
  add("A1 is normal", multiply(M.A1, M.A2) == multiply(M.A2, M.A1));

  bool eig = true;
  for (std::size_t c = 0; c < k && eig; ++c)
    for (std::size_t i = 0; i < k && eig; ++i) {
      CycloNum s;
      for (std::size_t j = 0; j < k; ++j)
        if (M.A1[i][j] != 0) s = s + CycloNum(M.A1[i][j]) * T.rows[j][c];
      eig = s == M.theta[c] * T.rows[i][c];
    }
  add("eigenvector identity A1 w_k = theta_k w_k", eig);

  try {
    const auto& R = P.partition();
    std::string d = "p=" + std::to_string(R.p) + (R.certified ? "" : " (heuristic)");
    add("C = pI - sum tau", true, d);
  } catch (const ConsistencyError& e) {
    add("C = pI - sum tau", false, e.what());
  }

  const auto& S = P.series();
  bool integral = true;
  for (const auto& n : S.numerators) integral = integral && n.is_integral();
  add("series numerators are integral", integral);
  if (S.dim == 3) {
    bool sym = S.den_t == S.den_u;
    auto cp = T.conj_perm();
    for (std::size_t i = 0; i < k && sym; ++i)
      sym = S.numerators[static_cast<std::size_t>(cp[i])].swapped() == S.numerators[i];
    add("swap symmetry P_i*(t,u) = P_i(u,t)", sym);
  }

  auto rec = mults_recursive(M, level);
  auto dir = mults_direct_all(G, C, T, level);
  auto ser = expand(S, level);
  add("direct = recursive", dir == rec, "level " + std::to_string(level));
  add("recursive = series expansion", ser == rec, "level " + std::to_string(level));
  bool dims = true;
  for (const auto& [mn, v] : rec) {
    long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * T.degrees[i];
    dims = dims && s == weyl_dim(G.dim, mn.first, mn.second);
  }
  add("dimension conservation", dims);

  auto mol = molien(G, C);
  auto sec = t_section(S, 0);
  add("Molien series = P_0(t,0)", mol.num == sec.num && mol.den == sec.den);
  return out;
}

// ---------------------------------------------------------------- output

namespace {

std::string default_format(const std::string& cmd) {
  if (cmd == "graph") return "dot";
  if (cmd == "series" || cmd == "molien" || cmd == "partition" || cmd == "verify" || cmd == "catalog") return "txt";
  return "json";
}

std::string csv_matrix(const IntMatrix& A) {
  std::ostringstream os;
  for (const auto& row : A) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << "\n";
  }
  return os.str();
}

std::string txt_matrix(const IntMatrix& A) {
  std::ostringstream os;
  for (const auto& row : A) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << std::setw(3) << row[j];
    os << "\n";
  }
  return os.str();
}

std::string mult_rows(const MultTable& t, const char* sep) {
  std::ostringstream os;
  for (const auto& [mn, v] : t) {
    os << mn.first << sep << mn.second;
    for (long x : v) os << sep << x;
    os << "\n";
  }
  return os.str();
}

[[noreturn]] void bad_format(const std::string& fmt, const std::string& cmd) {
  throw DomainError("format '" + fmt + "' is not available for " + cmd);
}

std::string render_catalog(const std::string& fmt) {
  if (fmt == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : catalog())
      j.push_back({{"name", e.name},
                   {"dim", e.dim},
                   {"params", e.params},
                   {"aliases", e.aliases},
                   {"constraint", e.constraint},
                   {"expected", e.has_expected}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  const char* sep = fmt == "csv" ? "," : " ";
  if (fmt != "txt" && fmt != "csv") bad_format(fmt, "catalog");
  for (const auto& e : catalog()) {
    std::string params, aliases;
    for (const auto& p : e.params) params += (params.empty() ? "" : ";") + p;
    for (const auto& a : e.aliases) aliases += (aliases.empty() ? "" : ";") + a;
    os << e.name << sep << "SL" << e.dim << sep << (params.empty() ? "-" : params) << sep
       << (aliases.empty() ? "-" : aliases) << sep << (e.has_expected ? "expected" : "-");
    if (!e.constraint.empty()) os << sep << '"' << e.constraint << '"';
    os << "\n";
  }
  return os.str();
}

std::string render(const JobSpec& spec, const std::string& fmt, Pipeline& P, const nlohmann::json* expected) {
  const std::string& cmd = spec.command;
  if (cmd == "enumerate") {
    const auto& G = P.group();
    const auto& C = P.classes();
    if (fmt == "json") return nlohmann::json{{"group", to_json(G)}, {"classes", to_json(C)}}.dump() + "\n";
    std::ostringstream os;
    if (fmt == "txt") {
      os << P.label() << "\norder " << G.order() << "\nclasses " << C.count() << "\nexponent " << G.exponent()
         << "\n";
      for (std::size_t c = 0; c < C.count(); ++c)
        os << "class " << c << " size " << C.sizes[c] << " order " << G.order_of(C.reps[c]) << "\n";
      return os.str();
    }
    if (fmt == "csv") {
      os << "class,size,order\n";
      for (std::size_t c = 0; c < C.count(); ++c)
        os << c << "," << C.sizes[c] << "," << G.order_of(C.reps[c]) << "\n";
      return os.str();
    }
    bad_format(fmt, cmd);
  }
  if (cmd == "chartab") {
    const auto& T = P.table();
    if (fmt == "json") return to_json(T).dump(2) + "\n";
    if (fmt != "csv" && fmt != "txt") bad_format(fmt, cmd);
    const char* sep = fmt == "csv" ? "," : "\t";
    std::ostringstream os;
    os << "size";
    for (long s : T.class_sizes) os << sep << s;
    os << "\n";
    for (std::size_t i = 0; i < T.size(); ++i) {
      os << "X." << i;
      for (const auto& v : T.rows[i]) os << sep << v.str();
      os << "\n";
    }
    return os.str();
  }
  if (cmd == "mckay") {
    const auto& M = P.mckay();
    if (fmt == "json") return to_json(M).dump(2) + "\n";
    if (fmt == "csv") return csv_matrix(M.A1);
    if (fmt == "txt") {
      std::ostringstream os;
      os << "A1 (rank " << M.rankA1 << ")\n" << txt_matrix(M.A1) << "theta";
      for (const auto& t : M.theta) os << " " << t.str();
      os << "\n";
      return os.str();
    }
    bad_format(fmt, cmd);
  }
  if (cmd == "cartan") {
    const auto& M = P.mckay();
    if (fmt == "json") return nlohmann::json(M.C).dump() + "\n";
    if (fmt == "csv") return csv_matrix(M.C);
    if (fmt == "txt") return txt_matrix(M.C);
    bad_format(fmt, cmd);
  }
  if (cmd == "graph") {
    const auto& M = P.mckay();
    if (fmt == "dot") return graph_dot(M);
    if (fmt == "json") {
      nlohmann::json e = nlohmann::json::array();
      for (const auto& x : graph_edges(M)) e.push_back({{"i", x.i}, {"j", x.j}, {"mult", x.mult}, {"lines", x.lines}});
      return nlohmann::json{{"nodes", M.A1.size()}, {"edges", e}}.dump(2) + "\n";
    }
    if (fmt == "csv") {
      std::ostringstream os;
      os << "i,j,mult,lines\n";
      for (const auto& x : graph_edges(M)) os << x.i << "," << x.j << "," << x.mult << "," << x.lines << "\n";
      return os.str();
    }
    bad_format(fmt, cmd);
  }
  if (cmd == "series") {
    const auto& S = P.series();
    if (spec.closed) {
      if (fmt == "json") return to_json(S).dump(2) + "\n";
      if (fmt == "txt") {
        std::string s = pretty(S);
        s += "D(t) = " + S.den_t.expand().str('t') + "\n";
        if (S.dim == 2 && expected && expected->contains("denominator")) {
          std::string den = expected->at("denominator").get<std::string>();
          auto r = numerators_over(S, parse_poly(den).at_u0());
          if (!r.empty()) {
            s += "\nD = " + den + "\n";
            for (std::size_t i = 0; i < r.size(); ++i) s += "N" + std::to_string(i) + "(t) = " + r[i].str('t') + "\n";
          }
        }
        return s;
      }
      bad_format(fmt, cmd + " --closed");
    }
    auto t = expand(S, spec.level);
    if (fmt == "json") return to_json(t).dump() + "\n";
    if (fmt == "csv") return "m,n,mult...\n" + mult_rows(t, ",");
    if (fmt == "txt") return mult_rows(t, " ");
    bad_format(fmt, cmd);
  }
  if (cmd == "molien") {
    auto f = staged("molien", [&] { return molien(P.group(), P.classes()); });
    if (fmt == "json") return to_json(f).dump(2) + "\n";
    if (fmt == "txt") return "(" + f.num.str() + ") / " + f.den.str() + "\n";
    bad_format(fmt, cmd);
  }
  if (cmd == "partition") {
    const auto& R = P.partition();
    if (fmt == "json") return to_json(R).dump(2) + "\n";
    if (fmt == "dot") return partition_dot(P.mckay().C, R);
    if (fmt == "txt") {
      std::ostringstream os;
      os << "p=" << R.p << (R.certified ? "" : " (heuristic upper bound)") << "\n";
      for (std::size_t l = 0; l < R.partition.size(); ++l) {
        os << "S_" << l << " = {";
        for (std::size_t x = 0; x < R.partition[l].size(); ++x) os << (x ? "," : "") << R.partition[l][x];
        os << "}\n";
      }
      return os.str();
    }
    bad_format(fmt, cmd);
  }
  if (cmd == "verify") {
    auto checks = verify_all(P, spec.level);
    bool ok = true;
    std::string failed;
    nlohmann::json j = nlohmann::json::array();
    std::ostringstream os;
    for (const auto& c : checks) {
      ok = ok && c.ok;
      if (!c.ok && failed.empty()) failed = c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
      os << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      j.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    }
    if (!ok) throw ConsistencyError("verify: " + failed + "\n" + os.str());
    if (fmt == "json") return j.dump(2) + "\n";
    if (fmt == "txt") return os.str();
    bad_format(fmt, cmd);
  }
  throw DomainError("unknown command '" + cmd + "'");
}

std::string file_stem(const std::string& label) {
  std::string s;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') s += c;
    else if (c == '=' || c == ',' || c == '(') s += '_';
  }
  return s;
}

std::vector<GroupElement> read_gens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read generator file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("generator file '" + path + "' is not valid JSON");
  }
  if (!j.is_array() || j.empty()) throw DomainError("generator file must hold a non-empty list of matrices");
  std::vector<GroupElement> g;
  for (const auto& m : j) g.push_back(element_from_json(m));
  return g;
}

int execute(const JobSpec& spec, std::ostream& out) {
  static const std::vector<std::string> commands{"enumerate", "chartab", "mckay",     "cartan", "graph",
                                                 "series",    "molien",  "partition", "verify", "catalog"};
  if (std::find(commands.begin(), commands.end(), spec.command) == commands.end())
    throw DomainError("unknown command '" + spec.command + "'");
  if (spec.level < 0 || spec.level > kMaxLevel)
    throw DomainError("level must be between 0 and " + std::to_string(kMaxLevel));
  const std::string fmt = spec.format.empty() ? default_format(spec.command) : spec.format;
  if (fmt != "json" && fmt != "csv" && fmt != "dot" && fmt != "txt") throw DomainError("unknown format '" + fmt + "'");

  std::string text, stem;
  if (spec.command == "catalog") {
    text = render_catalog(fmt);
    stem = "catalog";
  } else {
    if (spec.preset.empty() == spec.gens_file.empty()) throw DomainError("give exactly one of --preset or --gens");
    std::optional<Pipeline> P;
    std::optional<nlohmann::json> expected;
    if (!spec.preset.empty()) {
      Preset pre = build(spec.preset, parse_params(spec.params));
      expected = pre.expected;
      P.emplace(pre.label(), pre.generators, spec.cache_dir);
    } else {
      if (!spec.params.empty()) throw DomainError("--param needs --preset");
      auto g = read_gens(spec.gens_file);
      std::string label = "gens_" + Pipeline("x", g).hash();
      P.emplace(label, std::move(g), spec.cache_dir);
    }
    text = render(spec, fmt, *P, expected ? &*expected : nullptr);
    if (spec.verify && spec.command != "verify") {
      JobSpec v = spec;
      v.command = "verify";
      render(v, "txt", *P, nullptr);
    }
    stem = file_stem(P->label()) + "." + spec.command + (spec.closed ? ".closed" : "");
  }

  if (spec.out_dir.empty()) {
    out << text;
  } else {
    fs::create_directories(spec.out_dir);
    fs::path f = fs::path(spec.out_dir) / (stem + "." + fmt);
    std::ofstream o(f, std::ios::binary);
    o << text;
    if (!o) throw DomainError("cannot write '" + f.string() + "'");
    out << f.string() << "\n";
  }
  return 0;
}

}  // namespace

int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    return execute(spec, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mckay3
