#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mckay3/grp.hpp"

namespace mckay3 {

using Params = std::map<std::string, long>;

struct Preset {
  std::string name;  // canonical family tag
  Params params;
  int dim = 0;
  std::vector<GroupElement> generators;
  // Reference values for this group, if recorded (see data/expected).
  std::optional<nlohmann::json> expected;

  std::string label() const;  // e.g. "BDa(q=2,n=3)"
};

struct CatalogEntry {
  std::string name;
  int dim;
  std::vector<std::string> params;
  std::vector<std::string> aliases;
  std::string constraint;  // human readable, empty if none
  bool has_expected;
};

// Deterministic listing: SL2 families first, then SL3.
const std::vector<CatalogEntry>& catalog();

// Resolves aliases; throws DomainError on unknown names or bad parameters.
Preset build(const std::string& name, const Params& params = {});

// Parses "k=v" items.
Params parse_params(const std::vector<std::string>& items);

std::optional<nlohmann::json> expected_data(const std::string& canonical_name);

// Reference row index of each computed character row, when the preset supplies it.
std::optional<std::vector<int>> ref_perm(const Preset& p);

}  // namespace mckay3
