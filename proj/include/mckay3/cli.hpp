#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mckay3/presets.hpp"
#include "mckay3/roots.hpp"
#include "mckay3/series.hpp"

namespace mckay3 {

constexpr int kMaxLevel = 64;

struct JobSpec {
  std::string command;  // enumerate chartab mckay cartan graph series molien partition verify catalog
  std::string preset;
  std::vector<std::string> params;  // "k=v"
  std::string gens_file;
  int level = 10;
  bool closed = false;  // series: closed form instead of the expansion
  std::string out_dir;
  std::string cache_dir;
  std::string format;  // empty: per-command default
  bool verify = false;
};

// Lazily computed stages for one group, optionally backed by a JSON cache.
class Pipeline {
 public:
  Pipeline(std::string label, std::vector<GroupElement> gens, std::string cache_dir = {});

  const std::string& label() const { return label_; }
  const std::vector<GroupElement>& generators() const { return gens_; }
  std::string hash() const;  // hex digest of the generator matrices

  const FiniteMatrixGroup& group();
  const ConjClassSet& classes();
  const CharacterTable& table();
  const McKayData& mckay();
  const RationalBranchingSeries& series();
  const ReflectionSet& partition();

  bool loaded_from_cache() const { return from_cache_; }

 private:
  void load_cache();
  void store_cache();

  std::string label_;
  std::vector<GroupElement> gens_;
  std::string cache_dir_;
  bool cache_tried_ = false;
  bool from_cache_ = false;
  std::optional<FiniteMatrixGroup> G_;
  std::optional<ConjClassSet> C_;
  std::optional<CharacterTable> T_;
  std::optional<McKayData> M_;
  std::optional<RationalBranchingSeries> S_;
  std::optional<ReflectionSet> R_;
};

struct CheckResult {
  std::string name;
  bool ok;
  std::string detail;
};

// Every invariant the artifact asserts, up to the given expansion level.
std::vector<CheckResult> verify_all(Pipeline& P, int level);

std::uint64_t fnv1a(const std::string& s);

// Exit status: 0 ok, 1 domain error, 2 consistency failure.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace mckay3
