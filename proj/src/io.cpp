#include "leaky/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "leaky/errors.hpp"

namespace leaky::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

namespace {

double get_number(const json& doc, const std::string& key, const std::string& where) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json numbers(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number(x));
  return arr;
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    line += c;
    first = false;
  }
  return line + '\n';
}

}  // namespace

CurvatureProfile profile_from_json(const json& doc) {
  const std::string where = "profile";
  if (!doc.is_object()) throw ConfigError("profile must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ConfigError("profile.kind must be \"fourier\" or \"preset\"");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  const double shift = doc.contains("shift") ? get_number(doc, "shift", where) : 0.0;
  try {
    if (kind == "fourier") {
      for (const auto& [key, value] : doc.items()) {
        if (key != "kind" && key != "L" && key != "sin" && key != "cos" && key != "shift") {
          throw ConfigError("profile: unknown field '" + key + "' for kind fourier");
        }
      }
      if (!doc.contains("L")) throw ConfigError("profile.L is required for kind fourier");
      const double L = get_number(doc, "L", where);
      if (!(L > 0.0)) throw ConfigError("profile.L must be > 0");
      std::vector<double> cos = get_numbers(doc, "cos", where);
      if (!cos.empty()) {
        if (cos.front() != 0.0) {
          throw ConfigError(
              "profile.cos[0] must be 0: a constant curvature term breaks the zero-mean condition "
              "(A.3)");
        }
        cos.erase(cos.begin());
      }
      return CurvatureProfile::fourier(L, std::move(cos), get_numbers(doc, "sin", where))
          .shifted(shift);
    }
    if (kind == "preset") {
      if (!doc.contains("name") || !doc.at("name").is_string()) {
        throw ConfigError("profile.name is required for kind preset");
      }
      CurvatureProfile::Params params;
      for (const auto& [key, value] : doc.items()) {
        if (key == "kind" || key == "name" || key == "shift") continue;
        if (!value.is_number()) throw ConfigError("profile." + key + " must be a number");
        params[key] = value.get<double>();
      }
      return CurvatureProfile::preset(doc.at("name").get<std::string>(), params).shifted(shift);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  throw ConfigError("profile.kind must be \"fourier\" or \"preset\", got \"" + kind + "\"");
}

json profile_to_json(const CurvatureProfile& profile) {
  json doc;
  if (profile.kind() == ProfileKind::FourierSeries) {
    doc["kind"] = "fourier";
    doc["L"] = profile.period();
    doc["sin"] = profile.sin_coeffs();
    std::vector<double> cos;
    if (!profile.cos_coeffs().empty()) {
      cos.push_back(0.0);
      cos.insert(cos.end(), profile.cos_coeffs().begin(), profile.cos_coeffs().end());
    }
    doc["cos"] = cos;
  } else {
    doc["kind"] = "preset";
    doc["name"] = profile.name();
    for (const auto& [key, value] : profile.params()) doc[key] = value;
  }
  if (profile.shift() != 0.0) doc["shift"] = profile.shift();
  return doc;
}

json to_json(const AssumptionReport& r) {
  json doc;
  doc["halfwidth"] = number(r.halfwidth);
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"id", e.id}, {"pass", e.pass}, {"detail", e.detail}});
  }
  doc["assumptions"] = entries;
  doc["all_pass"] = r.all_pass();
  doc["K1"] = number(r.period.K1);
  doc["K2"] = number(r.period.K2);
  doc["gamma_plus"] = number(r.norms.gamma);
  doc["dgamma_plus"] = number(r.norms.dgamma);
  doc["d2gamma_plus"] = number(r.norms.d2gamma);
  doc["mean_curvature_integral"] = number(r.mean_curvature_integral);
  doc["max_abs_phase"] = number(r.max_abs_phase);
  doc["phase_condition"] = r.phase_condition;
  doc["jacobian_positive"] = r.jacobian_positive;
  doc["injectivity"] = r.sampled_injective ? "sampled: no overlap found" : "sampled: overlap found";
  doc["a0_estimate"] = number(r.a0_estimate);
  doc["warnings"] = r.warnings;
  return doc;
}

json to_json(const DecayingProfileReport& r) {
  json doc;
  doc["R"] = number(r.R);
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"id", e.id}, {"pass", e.pass}, {"detail", e.detail}});
  }
  doc["assumptions"] = entries;
  doc["all_pass"] = r.all_pass();
  doc["tau_fit"] = number(r.tau_fit);
  doc["K_fit"] = number(r.K_fit);
  doc["c_fit"] = number(r.c_fit);
  doc["sup_gamma"] = number(r.sup_gamma);
  return doc;
}

json to_json(const GapReport& r) {
  json doc;
  json bands = json::array();
  for (const auto& b : r.bands) {
    bands.push_back({{"j", b.j}, {"B", number(b.length)}, {"lo", number(b.lo)}, {"hi", number(b.hi)}});
  }
  json gaps = json::array();
  for (const auto& g : r.gaps) gaps.push_back({{"j", g.j}, {"G", number(g.length)}});
  doc["bands"] = bands;
  doc["gaps"] = gaps;
  if (r.found()) {
    doc["first_open_gap"] = r.first_open_gap;
  } else {
    doc["first_open_gap"] = nullptr;
    doc["first_open_gap_status"] =
        "not found in computed range j <= " + std::to_string(r.searched_up_to);
  }
  doc["searched_up_to"] = r.searched_up_to;
  doc["gap_tolerance"] = number(r.gap_tolerance);
  doc["edge_grid_discrepancy"] = number(r.edge_grid_discrepancy);
  json crit = json::array();
  for (const auto& c : r.criterion) {
    crit.push_back({{"n", c.n},
                    {"verdict", to_string(c.verdict)},
                    {"amplitude", number(c.amplitude)},
                    {"upper_bound", number(c.upper_bound)},
                    {"residual_sup", number(c.residual_sup)}});
  }
  doc["criterion"] = crit;
  return doc;
}

json to_json(const FiberSpectrum& s) {
  json doc;
  doc["beta"] = number(s.beta);
  doc["theta"] = number(s.theta);
  doc["a"] = number(s.a);
  doc["n_s"] = s.grid.n_s;
  doc["n_u"] = s.grid.n_u;
  doc["zeta_plus"] = number(s.zeta_plus);
  doc["zeta_minus"] = number(s.zeta_minus);
  doc["kappa_plus"] = numbers(s.kappa_plus);
  doc["kappa_minus"] = numbers(s.kappa_minus);
  doc["tau_plus"] = numbers(s.tau_plus);
  doc["tau_minus"] = numbers(s.tau_minus);
  doc["lambda_hat"] = numbers(s.lambda_hat);
  doc["slack_plus"] = numbers(s.slack_plus);
  doc["slack_minus"] = numbers(s.slack_minus);
  doc["residual_plus"] = numbers(s.residual_plus);
  doc["residual_minus"] = numbers(s.residual_minus);
  json ok = json::array();
  for (bool b : s.bracketing_ok) ok.push_back(b);
  doc["bracketing_ok"] = ok;
  return doc;
}

json to_json(const GapPersistenceRow& r) {
  return {{"beta", number(r.beta)},
          {"a", number(r.a)},
          {"fiber_gap", number(r.fiber_gap)},
          {"certified_lower", number(r.certified_lower)},
          {"limit", number(r.limit)},
          {"residual", number(r.residual)},
          {"envelope", number(r.envelope)}};
}

json to_json(const BandStructureResult& r) {
  json doc;
  doc["beta"] = number(r.beta);
  doc["a"] = number(r.a);
  doc["essential_spectrum"] = "each fiber: [0, inf), not computed";
  json bands = json::array();
  for (std::size_t n = 0; n < r.bands.size(); ++n) {
    bands.push_back({{"n", n + 1}, {"lo", number(r.bands[n].lo)}, {"hi", number(r.bands[n].hi)}});
  }
  json gaps = json::array();
  for (std::size_t n = 0; n < r.gaps.size(); ++n) {
    gaps.push_back({{"n", n + 1},
                    {"lo", number(r.gaps[n].lo)},
                    {"hi", number(r.gaps[n].hi)},
                    {"G_limit", number(r.limits.gaps[n].length)}});
  }
  doc["bands"] = bands;
  doc["gaps"] = gaps;
  return doc;
}

json to_json(const LineSpectrum& s) {
  json doc;
  doc["R"] = number(s.R);
  doc["n_points"] = s.n_points;
  doc["boundary"] = s.boundary == LineBoundary::Decaying ? "decaying" : "dirichlet";
  doc["count"] = s.count;
  doc["mu"] = numbers(s.mu);
  doc["convergence_flag"] = s.convergence_flag;
  doc["max_change"] = number(s.max_change);
  doc["beta_0"] = "not computed";
  return doc;
}

std::string curve_csv(std::span<const CurveSample> samples) {
  std::string out = "s,x,y,tx,ty,phase\n";
  for (const auto& c : samples) {
    out += csv_line({format_number(c.s), format_number(c.point.x), format_number(c.point.y),
                     format_number(c.tangent.x), format_number(c.tangent.y),
                     format_number(c.phase)});
  }
  return out;
}

std::string band_table_csv(const FloquetBandTable& table) {
  std::string out = "theta";
  for (int j = 1; j <= table.count; ++j) out += ",mu_" + std::to_string(j);
  out += '\n';
  const auto row = [&](double theta, const std::vector<double>& mu) {
    out += format_number(theta);
    for (double v : mu) out += "," + format_number(v);
    out += '\n';
  };
  bool pi_written = false;
  for (std::size_t i = 0; i < table.theta.size(); ++i) {
    const double t = table.theta[i];
    if (!pi_written && t >= std::numbers::pi) {
      row(std::numbers::pi, table.edge_pi);
      pi_written = true;
      if (t == std::numbers::pi) continue;
    }
    row(t, table.mu[i]);
  }
  if (!pi_written) row(std::numbers::pi, table.edge_pi);
  return out;
}

std::string lambda_table_csv(const BandStructureResult& r) {
  std::string out = "theta";
  const std::size_t J = r.lambda_hat.empty() ? 0 : r.lambda_hat.front().size();
  for (std::size_t j = 1; j <= J; ++j) out += ",lambda_" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < r.theta.size(); ++i) {
    out += format_number(r.theta[i]);
    for (double v : r.lambda_hat[i]) out += "," + format_number(v);
    out += '\n';
  }
  return out;
}

std::string transverse_csv(const std::vector<std::pair<TransverseSpec, TransverseMode>>& rows) {
  std::string out = "a,beta,gamma_plus,variant,zeta,bound_lo,bound_hi,within_bounds\n";
  for (const auto& [spec, mode] : rows) {
    out += csv_line({format_number(spec.a), format_number(spec.beta),
                     format_number(spec.gamma_plus), to_string(spec.variant),
                     format_number(mode.zeta), format_number(mode.bound_lo),
                     format_number(mode.bound_hi), mode.within_bounds ? "true" : "false"});
  }
  return out;
}

std::string line_spectrum_csv(const LineSpectrum& s) {
  std::string out = "j,mu_j\n";
  for (std::size_t j = 0; j < s.mu.size(); ++j) {
    out += csv_line({std::to_string(j + 1), format_number(s.mu[j])});
  }
  return out;
}

std::string line_asymptotics_csv(const std::vector<LineAsymptoticRow>& rows) {
  std::string out = "beta";
  const std::size_t n = rows.empty() ? 0 : rows.front().lambda.size();
  for (std::size_t j = 1; j <= n; ++j) out += ",lambda_" + std::to_string(j);
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.beta);
    for (double v : r.lambda) out += "," + format_number(v);
    out += '\n';
  }
  return out;
}

}  // namespace leaky::io
