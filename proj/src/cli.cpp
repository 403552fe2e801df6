#include "leaky/cli.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "leaky/band_assembly.hpp"
#include "leaky/curve_geometry.hpp"
#include "leaky/errors.hpp"
#include "leaky/fiber2d.hpp"
#include "leaky/gap_analysis.hpp"
#include "leaky/hill_floquet.hpp"
#include "leaky/io.hpp"
#include "leaky/straight_line.hpp"
#include "leaky/transverse_delta.hpp"

namespace leaky {

namespace {

using io::json;

const std::vector<std::pair<Subcommand, std::string>>& subcommand_names() {
  static const std::vector<std::pair<Subcommand, std::string>> names = {
      {Subcommand::ValidateCurve, "validate-curve"}, {Subcommand::Bands, "bands"},
      {Subcommand::Gaps, "gaps"},                    {Subcommand::Transverse, "transverse"},
      {Subcommand::Fiber2d, "fiber2d"},              {Subcommand::Straight, "straight"}};
  return names;
}

std::string bound_message(const std::string& field, double value, const std::string& bound) {
  std::ostringstream os;
  os << field << " = " << io::format_number(value) << " violates " << bound;
  return os.str();
}

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  bool has(const std::string& key) {
    seen_.insert(key);
    return doc_.contains(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_number()) throw ConfigError(key + " must be a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback, int lo, int hi) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      throw ConfigError(key + " = " + std::to_string(x) + " violates " + std::to_string(lo) +
                        " <= " + key + " <= " + std::to_string(hi));
    }
    return static_cast<int>(x);
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_boolean()) throw ConfigError(key + " must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_string()) throw ConfigError(key + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_array()) throw ConfigError(key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(key + " must be an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key,
                                   const std::vector<std::string>& fallback) {
    if (!has(key)) return fallback;
    const auto& v = doc_.at(key);
    if (!v.is_array()) throw ConfigError(key + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v) {
      if (!x.is_string()) throw ConfigError(key + " must be an array of strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown config field '" + key + "'");
    }
  }

 private:
  const json& doc_;
  std::set<std::string> seen_;
};

void require_positive(const std::string& field, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(bound_message(field, v, field + " > 0"));
}

std::vector<double> default_betas(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::Fiber2d:
      return {20.0, 40.0};
    case Subcommand::Transverse:
    case Subcommand::Straight:
      return {10.0};
    default:
      return {};
  }
}

TransverseVariant variant_from_string(const std::string& name) {
  if (name == "DirichletPlus") return TransverseVariant::DirichletPlus;
  if (name == "RobinMinus") return TransverseVariant::RobinMinus;
  throw ConfigError("variants: unknown transverse variant '" + name +
                    "' (DirichletPlus or RobinMinus)");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// Exit-code classification of an exception escaping a subcommand.
int report_failure(const std::exception& e, int code) {
  std::cerr << "leaky: " << e.what() << "\n";
  return code;
}

int run_validate_curve(const RunConfig& c, const RunContext& ctx) {
  const CurvatureProfile& p = *c.profile;
  if (p.periodic()) {
    const AssumptionReport report = check_assumptions(p, c.halfwidth, c.sweep_points);
    io::write_atomic(ctx.out_dir / "assumptions.json", dump(io::to_json(report)));
    std::vector<double> grid(257);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = p.period() * i / 256.0;
    io::write_atomic(ctx.out_dir / "curve.csv", io::curve_csv(reconstruct_curve(p, grid)));
    return report.all_pass() ? 0 : 1;
  }
  const DecayingProfileReport report = check_decay_assumptions(p, c.R);
  io::write_atomic(ctx.out_dir / "decay_report.json", dump(io::to_json(report)));
  std::vector<double> grid(1025);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -c.R + 2.0 * c.R * i / 1024.0;
  io::write_atomic(ctx.out_dir / "curve.csv", io::curve_csv(reconstruct_curve(p, grid)));
  return report.all_pass() ? 0 : 1;
}

// A.1-A.3 gate for the Floquet subcommands; writes the report either way.
bool periodic_gate(const RunConfig& c, const RunContext& ctx) {
  const AssumptionReport report = check_assumptions(*c.profile, c.halfwidth, c.sweep_points);
  io::write_atomic(ctx.out_dir / "assumptions.json", dump(io::to_json(report)));
  for (const char* id : {"A.1", "A.2", "A.3"}) {
    const AssumptionEntry* e = report.find(id);
    if (!e || !e->pass) {
      std::cerr << "leaky: assumption " << id << " fails: " << (e ? e->detail : "missing") << "\n";
      return false;
    }
  }
  return true;
}

int run_bands(const RunConfig& c, const RunContext& ctx) {
  if (!periodic_gate(c, ctx)) return 1;
  BandTableOptions opts{c.theta_count, c.count, c.n_modes, ctx.jobs};
  const FloquetBandTable table = band_table(*c.profile, opts);
  io::write_atomic(ctx.out_dir / "bands.csv", io::band_table_csv(table));
  if (!c.betas.empty()) {
    json doc = json::array();
    for (std::size_t i = 0; i < c.betas.size(); ++i) {
      const BandStructureResult r = shift_bands(table, c.betas[i]);
      doc.push_back(io::to_json(r));
      io::write_atomic(ctx.out_dir / ("lambda_" + std::to_string(i + 1) + ".csv"),
                       io::lambda_table_csv(r));
    }
    io::write_atomic(ctx.out_dir / "band_structure.json", dump(doc));
  }
  return 0;
}

int run_gaps(const RunConfig& c, const RunContext& ctx) {
  if (!periodic_gate(c, ctx)) return 1;
  BandTableOptions opts{c.theta_count, std::max(c.count, c.max_gap_index + 1), c.n_modes,
                        ctx.jobs};
  const FloquetBandTable table = band_table(*c.profile, opts);
  GapReport report = gap_report(table, c.gap_tolerance);
  const FourierDecomposition d = curvature_decompose(*c.profile, std::max(c.max_gap_index, 16));
  for (int n = 1; n <= c.max_gap_index; ++n) report.criterion.push_back(check_gap_criterion(d, n));
  io::write_atomic(ctx.out_dir / "gap_report.json", dump(io::to_json(report)));
  return 0;
}

int run_transverse(const RunConfig& c, const RunContext& ctx) {
  std::vector<std::pair<TransverseSpec, TransverseMode>> rows;
  int code = 0;
  for (double a : c.halfwidths) {
    for (double beta : c.betas) {
      for (const auto& name : c.variants) {
        const TransverseVariant v = variant_from_string(name);
        TransverseSpec spec{a, beta, v == TransverseVariant::RobinMinus ? c.gamma_plus : 0.0, v};
        TransverseMode mode;
        try {
          mode = solve_transverse(spec);
        } catch (const NumericalError& e) {
          std::cerr << "leaky: " << e.what() << "\n";
          mode.zeta = mode.k = mode.excess = std::numeric_limits<double>::quiet_NaN();
          code = 2;
        }
        rows.emplace_back(spec, mode);
      }
    }
  }
  io::write_atomic(ctx.out_dir / "transverse.csv", io::transverse_csv(rows));
  return code;
}

int run_fiber2d(const RunConfig& c, const RunContext& ctx) {
  const CurvatureProfile& p = *c.profile;
  for (double beta : c.betas) {
    if (const std::string why = bracketing_precondition(p, beta); !why.empty()) {
      json doc;
      doc["refused"] = true;
      doc["beta"] = io::number(beta);
      doc["reason"] = why;
      io::write_atomic(ctx.out_dir / "fiber2d.json", dump(doc));
      std::cerr << "leaky: fiber2d refused at beta = " << beta << ": " << why << "\n";
      return 1;
    }
  }
  BracketingOptions opts;
  opts.count = c.fiber_count;
  opts.n_s = c.n_s;
  opts.n_u = c.n_u;
  opts.beta_h = c.beta_h;
  opts.n_modes = c.n_modes;
  opts.richardson = c.richardson;
  opts.eigen.tol = c.eigen_tol;
  opts.eigen.seed = c.seed;

  std::vector<std::pair<double, double>> jobs;
  for (double beta : c.betas) {
    for (double theta : c.thetas) jobs.emplace_back(beta, theta);
  }
  std::vector<FiberSpectrum> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const int workers = std::clamp(ctx.jobs, 1, static_cast<int>(jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += workers) {
          try {
            results[i] = bracketing_report(p, jobs[i].first, jobs[i].second, opts);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  json runs = json::array();
  for (const auto& r : results) runs.push_back(io::to_json(r));
  io::write_atomic(ctx.out_dir / "fiber2d.json", dump(json{{"runs", runs}}));

  if (c.gap_index > 0) {
    json rows = json::array();
    for (const auto& row : gap_persistence_check(p, c.betas, c.gap_index, opts)) {
      rows.push_back(io::to_json(row));
    }
    io::write_atomic(ctx.out_dir / "gap_persistence.json",
                     dump(json{{"n", c.gap_index}, {"theta_sampling", "0, pi"}, {"rows", rows}}));
  }
  return 0;
}

int run_straight(const RunConfig& c, const RunContext& ctx) {
  const CurvatureProfile& p = *c.profile;
  const DecayingProfileReport report = check_decay_assumptions(p, c.R);
  io::write_atomic(ctx.out_dir / "decay_report.json", dump(io::to_json(report)));
  if (!report.all_pass()) return 1;
  const LineBoundary boundary =
      c.boundary == "dirichlet" ? LineBoundary::Dirichlet : LineBoundary::Decaying;
  const LineSpectrum spectrum = line_discrete_spectrum(p, c.R, c.n_points, boundary);
  io::write_atomic(ctx.out_dir / "line_spectrum.csv", io::line_spectrum_csv(spectrum));
  io::write_atomic(ctx.out_dir / "line_spectrum.json", dump(io::to_json(spectrum)));
  if (!spectrum.convergence_flag) {
    std::cerr << "leaky: line spectrum unstable under R -> 2R (max change "
              << spectrum.max_change << ")\n";
    return 2;
  }
  io::write_atomic(ctx.out_dir / "line_asymptotics.csv",
                   io::line_asymptotics_csv(line_asymptotics(spectrum, c.betas)));
  return 0;
}

}  // namespace

std::string to_string(Subcommand cmd) {
  for (const auto& [c, name] : subcommand_names()) {
    if (c == cmd) return name;
  }
  return "unknown";
}

Subcommand subcommand_from_string(const std::string& name) {
  for (const auto& [c, n] : subcommand_names()) {
    if (n == name) return c;
  }
  throw ConfigError("subcommand: unknown value '" + name +
                    "' (validate-curve, bands, gaps, transverse, fiber2d, straight)");
}

RunConfig parse_config(const std::string& text, std::optional<Subcommand> fallback) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  Reader in(doc);
  RunConfig c;
  if (in.has("subcommand")) {
    c.subcommand = subcommand_from_string(in.string("subcommand", ""));
  } else if (fallback) {
    c.subcommand = *fallback;
  } else {
    throw ConfigError("subcommand is required");
  }

  if (in.has("profile")) c.profile = io::profile_from_json(doc.at("profile"));
  if (!c.profile && c.subcommand != Subcommand::Transverse) {
    throw ConfigError("profile is required for subcommand " + to_string(c.subcommand));
  }
  if (c.profile) {
    const bool periodic = c.profile->periodic();
    if (c.subcommand == Subcommand::Straight && periodic) {
      throw ConfigError("profile: straight needs a decaying profile (sech, gaussian, algebraic)");
    }
    if ((c.subcommand == Subcommand::Bands || c.subcommand == Subcommand::Gaps ||
         c.subcommand == Subcommand::Fiber2d) &&
        !periodic) {
      throw ConfigError("profile: " + to_string(c.subcommand) + " needs a periodic profile");
    }
  }

  c.halfwidth = in.number("halfwidth", c.halfwidth);
  require_positive("halfwidth", c.halfwidth);
  c.sweep_points = in.integer("sweep_points", c.sweep_points, 100, 100000);
  c.n_modes = in.integer("n_modes", c.n_modes, 8, 4096);
  c.theta_count = in.integer("theta_count", c.theta_count, 2, 4096);
  c.count = in.integer("count", c.count, 1, 64);
  if (c.count > 2 * c.n_modes + 1) {
    throw ConfigError("count = " + std::to_string(c.count) + " violates count <= 2 n_modes + 1");
  }
  c.gap_tolerance = in.number("gap_tolerance", c.gap_tolerance);
  c.max_gap_index = in.integer("max_gap_index", c.max_gap_index, 1, 256);
  if (c.max_gap_index + 1 > 2 * c.n_modes + 1) {
    throw ConfigError("max_gap_index violates max_gap_index <= 2 n_modes");
  }

  c.betas = in.numbers("betas", default_betas(c.subcommand));
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    const std::string field = "betas[" + std::to_string(i) + "]";
    require_positive(field, c.betas[i]);
    if (c.subcommand == Subcommand::Fiber2d) {
      const double beta = c.betas[i];
      const double ba = beta > 1.0 ? 6.0 * std::log(beta) : 0.0;
      if (!(ba > 8.0)) {
        throw ConfigError(bound_message(field, beta, "beta a(beta) > 8 with a(beta) = 6 log(beta) / beta (beta a(beta) = " +
                                                         io::format_number(ba) + ")"));
      }
    }
  }
  if (c.subcommand == Subcommand::Fiber2d && c.betas.empty()) {
    throw ConfigError("betas must not be empty for fiber2d");
  }
  c.thetas = in.numbers("thetas", c.thetas);
  for (std::size_t i = 0; i < c.thetas.size(); ++i) {
    const double t = c.thetas[i];
    if (!(t >= 0.0 && t < 2.0 * std::numbers::pi)) {
      throw ConfigError(bound_message("thetas[" + std::to_string(i) + "]", t, "0 <= theta < 2 pi"));
    }
  }

  c.halfwidths = in.numbers("halfwidths", c.halfwidths);
  for (std::size_t i = 0; i < c.halfwidths.size(); ++i) {
    require_positive("halfwidths[" + std::to_string(i) + "]", c.halfwidths[i]);
  }
  c.gamma_plus = in.number("gamma_plus", c.gamma_plus);
  if (!(c.gamma_plus >= 0.0) || !std::isfinite(c.gamma_plus)) {
    throw ConfigError(bound_message("gamma_plus", c.gamma_plus, "gamma_plus >= 0"));
  }
  c.variants = in.strings("variants", c.variants);
  for (const auto& v : c.variants) variant_from_string(v);

  c.n_s = in.integer("n_s", c.n_s, 8, 4096);
  c.n_u = in.integer("n_u", c.n_u, 0, 16384);
  if (c.n_u != 0 && (c.n_u < 4 || c.n_u % 2 != 0)) {
    throw ConfigError("n_u = " + std::to_string(c.n_u) + " violates n_u even and >= 4 (or 0)");
  }
  c.beta_h = in.number("beta_h", c.beta_h);
  if (!(c.beta_h > 0.0 && c.beta_h <= 1.0)) {
    throw ConfigError(bound_message("beta_h", c.beta_h, "0 < beta_h <= 1"));
  }
  c.fiber_count = in.integer("fiber_count", c.fiber_count, 1, 10);
  c.richardson = in.boolean("richardson", c.richardson);
  c.gap_index = in.integer("gap_index", c.gap_index, 0, 12);
  if (c.gap_index + 1 > c.fiber_count && c.gap_index > 0) {
    c.fiber_count = std::max(c.fiber_count, c.gap_index + 1);
  }
  c.eigen_tol = in.number("eigen_tol", c.eigen_tol);
  if (!(c.eigen_tol > 0.0 && c.eigen_tol <= 1e-4)) {
    throw ConfigError(bound_message("eigen_tol", c.eigen_tol, "0 < eigen_tol <= 1e-4"));
  }
  if (in.has("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }

  c.R = in.number("R", c.R);
  require_positive("R", c.R);
  c.n_points = in.integer("n_points", c.n_points, 64, 1 << 20);
  if (c.n_points % 2 != 0) throw ConfigError("n_points must be even");
  c.boundary = in.string("boundary", c.boundary);
  if (c.boundary != "decaying" && c.boundary != "dirichlet") {
    throw ConfigError("boundary = '" + c.boundary + "' violates boundary in {decaying, dirichlet}");
  }
  in.reject_unknown();
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json doc;
  doc["subcommand"] = to_string(c.subcommand);
  if (c.profile) doc["profile"] = io::profile_to_json(*c.profile);
  doc["halfwidth"] = c.halfwidth;
  doc["sweep_points"] = c.sweep_points;
  doc["n_modes"] = c.n_modes;
  doc["theta_count"] = c.theta_count;
  doc["count"] = c.count;
  doc["gap_tolerance"] = c.gap_tolerance;
  doc["max_gap_index"] = c.max_gap_index;
  doc["betas"] = c.betas;
  doc["thetas"] = c.thetas;
  doc["halfwidths"] = c.halfwidths;
  doc["gamma_plus"] = c.gamma_plus;
  doc["variants"] = c.variants;
  doc["n_s"] = c.n_s;
  doc["n_u"] = c.n_u;
  doc["beta_h"] = c.beta_h;
  doc["fiber_count"] = c.fiber_count;
  doc["richardson"] = c.richardson;
  doc["gap_index"] = c.gap_index;
  doc["eigen_tol"] = c.eigen_tol;
  doc["seed"] = c.seed;
  doc["R"] = c.R;
  doc["n_points"] = c.n_points;
  doc["boundary"] = c.boundary;
  return dump(doc);
}

int run(const RunConfig& config, const RunContext& context) {
  try {
    std::filesystem::create_directories(context.out_dir);
    switch (config.subcommand) {
      case Subcommand::ValidateCurve:
        return run_validate_curve(config, context);
      case Subcommand::Bands:
        return run_bands(config, context);
      case Subcommand::Gaps:
        return run_gaps(config, context);
      case Subcommand::Transverse:
        return run_transverse(config, context);
      case Subcommand::Fiber2d:
        return run_fiber2d(config, context);
      case Subcommand::Straight:
        return run_straight(config, context);
    }
  } catch (const AssumptionError& e) {
    return report_failure(e, 1);
  } catch (const DomainError& e) {
    return report_failure(e, 1);
  } catch (const NumericalError& e) {
    return report_failure(e, 2);
  } catch (const std::exception& e) {
    return report_failure(e, 2);
  }
  return 2;
}

}  // namespace leaky
