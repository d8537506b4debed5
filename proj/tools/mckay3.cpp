#include <iostream>

#include "CLI11.hpp"
#include "mckay3/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"McKay correspondence for finite subgroups of SL2 and SL3"};
  app.require_subcommand(1);

  mckay3::JobSpec spec;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"enumerate", "group elements and conjugacy classes"},
      {"chartab", "character table"},
      {"mckay", "McKay matrices A1, A2 and the spectrum"},
      {"cartan", "generalized Cartan matrix"},
      {"graph", "McKay graph"},
      {"series", "branching series (expansion, or --closed)"},
      {"molien", "Molien series of the invariant ring"},
      {"partition", "minimal orthogonal partition of the simple reflections"},
      {"verify", "run every invariant check"},
      {"catalog", "list the built-in groups"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->final_callback([&spec, name = std::string(c.name)] { spec.command = name; });
    sub->add_option("--format", spec.format, "json|csv|dot|txt")->check(CLI::IsMember({"json", "csv", "dot", "txt"}));
    sub->add_option("--out", spec.out_dir, "write the result into this directory");
    if (std::string(c.name) == "catalog") continue;
    sub->add_option("--preset", spec.preset, "built-in group, see 'catalog'");
    sub->add_option("--param", spec.params, "preset parameter k=v")->take_all();
    sub->add_option("--gens", spec.gens_file, "JSON list of generator matrices");
    sub->add_option("--level", spec.level, "expansion level")->check(CLI::Range(0, mckay3::kMaxLevel));
    sub->add_option("--cache", spec.cache_dir, "cache directory");
    sub->add_flag("--verify", spec.verify, "also run the invariant checks");
    if (std::string(c.name) == "series") sub->add_flag("--closed", spec.closed, "closed rational form");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return mckay3::run(spec, std::cout, std::cerr);
}
