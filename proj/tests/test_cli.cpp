#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mckay3/cli.hpp"
#include "mckay3/errors.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
};

Result sh(const std::string& args) {
  std::string cmd = std::string(MCKAY3_EXE) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t c = 0;
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++c;
  return c;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("mckay3_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("E8 closed form") {
  auto r = sh("series --preset E8sl2 --closed");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("D = (1-t^12)(1-t^20)\n") != std::string::npos);
  CHECK(r.out.find("N0(t) = t^30+1\n") != std::string::npos);
  CHECK(r.out.find("N1(t) = t^29+t^19+t^11+t\n") != std::string::npos);
  CHECK(count(r.out, "\nN") == 9);
}

TEST_CASE("partition of type I") {
  auto r = sh("partition --preset I");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("p=4\n", 0) == 0);
  CHECK(count(r.out, "S_") == 4);
  auto j = nlohmann::json::parse(sh("partition --preset I --format json").out);
  CHECK(j["p"] == 4);
}

TEST_CASE("cyclic graph") {
  auto r = sh("graph --preset A1 --param j=5");
  REQUIRE(r.status == 0);
  CHECK(count(r.out, "[label=") == 5);
  CHECK(count(r.out, " -- ") == 5);
  auto j = nlohmann::json::parse(sh("graph --preset A1 --param j=5 --format json").out);
  CHECK(j["nodes"] == 5);
  CHECK(j["edges"].size() == 5);
}

TEST_CASE("exit codes") {
  CHECK(sh("catalog").status == 0);
  CHECK(count(sh("catalog").out, "\n") == 21);
  CHECK(sh("graph --preset BO --param m=2").status == 1);
  CHECK(sh("graph --preset nope").status == 1);
  CHECK(sh("graph").status == 1);
  CHECK(sh("series --preset E6 --level 65").status == 1);
  CHECK(sh("graph --preset E6 --format csv --param").status == 1);
  CHECK(sh("molien --preset E6 --format dot").status == 1);
  CHECK(sh("frobnicate").status == 1);
}

TEST_CASE("verify passes on presets") {
  for (const char* a : {"--preset E6", "--preset H", "--preset BDa --param q=2 --param n=3"}) {
    CAPTURE(a);
    auto r = sh(std::string("verify ") + a + " --level 8");
    CHECK(r.status == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(count(r.out, "PASS") >= 11);
  }
  CHECK(sh("mckay --preset D_example --verify").status == 0);
}

TEST_CASE("series expansion formats") {
  auto r = sh("series --preset A1 --param j=3 --level 4 --format csv");
  REQUIRE(r.status == 0);
  // header plus (4+1)(4+2)/2 points
  CHECK(count(r.out, "\n") == 1 + 15);
  CHECK(r.out.find("\n0,0,1,0,0\n") != std::string::npos);
  auto t = sh("series --preset E6 --level 12");
  // invariants of degree 12: t^6 t^6 and the generator of degree 12
  CHECK(t.out.find("\n0 12 2 ") != std::string::npos);
}

TEST_CASE("generator file input") {
  auto d = scratch("gens");
  // Z/3 acting by diag(z3, z3, z3)
  nlohmann::json g = nlohmann::json::array({nlohmann::json::array(
      {nlohmann::json::array({"z3", 0, 0}), nlohmann::json::array({0, "z3", 0}), nlohmann::json::array({0, 0, "z3"})})});
  std::ofstream(d / "g.json") << g.dump();
  auto r = sh("enumerate --format txt --gens " + (d / "g.json").string());
  REQUIRE(r.status == 0);
  CHECK(r.out.find("order 3\n") != std::string::npos);
  CHECK(r.out.find("classes 3\n") != std::string::npos);

  nlohmann::json bad = nlohmann::json::array({nlohmann::json::array({nlohmann::json::array({2, 0}),
                                                                     nlohmann::json::array({0, 1})})});
  std::ofstream(d / "bad.json") << bad.dump();
  CHECK(sh("enumerate --gens " + (d / "bad.json").string()).status == 1);
  CHECK(sh("enumerate --gens " + (d / "missing.json").string()).status == 1);
  fs::remove_all(d);
}

TEST_CASE("cache and output files are deterministic") {
  auto d = scratch("cache");
  std::string args = "chartab --preset J --cache " + (d / "c").string() + " --out ";
  auto r1 = sh(args + (d / "o1").string());
  auto r2 = sh(args + (d / "o2").string());
  REQUIRE(r1.status == 0);
  REQUIRE(r2.status == 0);
  std::vector<fs::path> cached;
  for (const auto& e : fs::directory_iterator(d / "c")) cached.push_back(e.path());
  REQUIRE(cached.size() == 1);
  CHECK(cached[0].extension() == ".json");
  fs::path f1 = d / "o1" / "J.chartab.json", f2 = d / "o2" / "J.chartab.json";
  REQUIRE(fs::exists(f1));
  CHECK(slurp(f1) == slurp(f2));
  CHECK(slurp(f1) == sh("chartab --preset J").out);

  // warm cache through the library
  mckay3::Pipeline P("J", mckay3::build("J").generators, (d / "c").string());
  CHECK(P.table().size() == 15);
  CHECK(P.loaded_from_cache());

  // a corrupted cache entry is a consistency failure, exit 2
  auto j = nlohmann::json::parse(slurp(cached[0]));
  j["group"]["inverse"].erase(0);
  std::ofstream(cached[0]) << j.dump();
  CHECK(sh("chartab --preset J --cache " + (d / "c").string()).status == 2);
  fs::remove_all(d);
}

TEST_CASE("library run exit statuses") {
  mckay3::JobSpec s;
  s.command = "graph";
  s.preset = "BTa";
  s.params = {"m=3"};
  std::ostringstream out, err;
  CHECK(mckay3::run(s, out, err) == 1);
  CHECK(err.str().find("invalid parameters") != std::string::npos);
  s.params = {"m=1"};
  s.command = "verify";
  s.level = 6;
  err.str("");
  CHECK(mckay3::run(s, out, err) == 0);
  CHECK(err.str().empty());
}
