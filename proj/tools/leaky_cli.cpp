#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "leaky/cli.hpp"
#include "leaky/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Strong-coupling band structure of a delta interaction on a periodic curve"};
  std::string config_path;
  std::string out_dir = "./out";
  int jobs = 1;
  std::string subcommand;
  app.add_option("subcommand", subcommand,
                 "validate-curve | bands | gaps | transverse | fiber2d | straight "
                 "(defaults to the config's \"subcommand\")");
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path);
    if (!in) throw leaky::ConfigError("cannot read config file " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    std::optional<leaky::Subcommand> requested;
    if (!subcommand.empty()) requested = leaky::subcommand_from_string(subcommand);
    const leaky::RunConfig config = leaky::parse_config(text.str(), requested);
    if (requested && config.subcommand != *requested) {
      throw leaky::ConfigError("command line asks for " + subcommand + " but the config says " +
                               leaky::to_string(config.subcommand));
    }
    return leaky::run(config, {out_dir, jobs});
  } catch (const leaky::ConfigError& e) {
    std::cerr << "leaky: config error: " << e.what() << "\n";
    return 2;
  }
}
