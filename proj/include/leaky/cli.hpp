#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "leaky/curvature.hpp"

namespace leaky {

enum class Subcommand { ValidateCurve, Bands, Gaps, Transverse, Fiber2d, Straight };

std::string to_string(Subcommand cmd);
/// Throws ConfigError for unknown names.
Subcommand subcommand_from_string(const std::string& name);

struct RunConfig {
  Subcommand subcommand = Subcommand::Bands;
  std::optional<CurvatureProfile> profile;  // required except for transverse

  // curve checks
  double halfwidth = 0.05;
  int sweep_points = 2000;

  // Floquet tables and gaps
  int n_modes = 128;
  int theta_count = 65;
  int count = 8;
  double gap_tolerance = -1.0;  // negative: 1e-8 (1 + |mu range|)
  int max_gap_index = 12;

  // beta lists (bands: optional shifted structures; fiber2d, transverse, straight)
  std::vector<double> betas;
  std::vector<double> thetas = {0.0};

  // transverse
  std::vector<double> halfwidths = {1.0};
  double gamma_plus = 1.0;
  std::vector<std::string> variants = {"DirichletPlus", "RobinMinus"};

  // fiber2d
  int n_s = 128;
  int n_u = 128;
  double beta_h = 0.05;
  int fiber_count = 3;
  bool richardson = true;
  int gap_index = 0;  // > 0 adds the gap persistence table
  double eigen_tol = 1e-8;
  std::uint64_t seed = 0x5eed;

  // straight
  double R = 40.0;
  int n_points = 8192;
  std::string boundary = "decaying";

  bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown fields and out-of-range knobs raise ConfigError
/// naming the field and its bound. `fallback` supplies the subcommand when
/// the document has none.
RunConfig parse_config(const std::string& text,
                       std::optional<Subcommand> fallback = std::nullopt);

/// JSON document that parses back to the same config.
std::string serialize_config(const RunConfig& config);

struct RunContext {
  std::filesystem::path out_dir = "out";
  int jobs = 1;
};

/// Runs the subcommand and writes its artifacts. Returns 0 on success, 1 on
/// an assumption failure (report still written), 2 on a numerical failure.
int run(const RunConfig& config, const RunContext& context);

}  // namespace leaky
