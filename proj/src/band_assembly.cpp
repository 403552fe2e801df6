#include "leaky/band_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "leaky/curve_geometry.hpp"
#include "leaky/errors.hpp"

namespace leaky {

BandStructureResult shift_bands(const FloquetBandTable& table, double beta) {
  BandStructureResult r;
  r.beta = beta;
  r.a = beta > 1.0 ? bracketing_halfwidth(beta) : 0.0;
  r.theta = table.theta;
  const double shift = -0.25 * beta * beta;
  r.lambda_hat = table.mu;
  for (auto& row : r.lambda_hat) {
    for (double& v : row) v += shift;
  }
  r.limits = gap_report(table);
  for (const auto& b : r.limits.bands) r.bands.push_back({b.lo + shift, b.hi + shift});
  for (std::size_t n = 0; n + 1 < r.bands.size(); ++n) {
    r.gaps.push_back({r.bands[n].hi, r.bands[n + 1].lo});
  }
  return r;
}

BandStructureResult assemble_bands(const CurvatureProfile& profile, double beta,
                                   const BandTableOptions& options) {
  const double a = bracketing_halfwidth(beta);
  const AssumptionReport report = check_assumptions(profile, a);
  if (!report.all_pass()) {
    std::ostringstream os;
    os << "curve fails assumptions at a(beta) = " << a << ":";
    for (const auto& e : report.entries) {
      if (!e.pass) os << " " << e.id << " (" << e.detail << ")";
    }
    throw AssumptionError(os.str());
  }
  return shift_bands(band_table(profile, options), beta);
}

std::vector<GapPersistenceRow> gap_persistence_check(const CurvatureProfile& profile,
                                                     const std::vector<double>& betas, int n,
                                                     const BracketingOptions& options) {
  if (n < 1) throw DomainError("gap index must be >= 1");
  BandTableOptions table_opts;
  table_opts.count = std::max(n + 1, 2);
  table_opts.n_modes = options.n_modes;
  table_opts.theta_count = 2;
  const GapReport limits = gap_report(band_table(profile, table_opts));
  const double limit = limits.gaps[n - 1].length;

  std::vector<GapPersistenceRow> rows;
  for (double beta : betas) {
    if (const std::string why = bracketing_precondition(profile, beta); !why.empty()) {
      throw DomainError("gap persistence precondition violated: " + why);
    }
    GapPersistenceRow row;
    row.beta = beta;
    row.a = bracketing_halfwidth(beta);
    row.limit = limit;
    row.envelope = std::log(beta) / beta;
    const StripGrid grid{options.n_s,
                         options.n_u > 0 ? options.n_u : adaptive_rows(beta, options.beta_h),
                         profile.period(), row.a};
    FiberEigenOptions eig = options.eigen;
    eig.count = n + 1;
    double top_plus = -std::numeric_limits<double>::infinity();
    double next_plus = std::numeric_limits<double>::infinity();
    double next_minus = std::numeric_limits<double>::infinity();
    for (double theta : {0.0, std::numbers::pi}) {
      const auto plus = fiber_levels(profile, beta, theta, FiberVariant::PlusDirichlet, grid, eig,
                                     options.richardson);
      const auto minus = fiber_levels(profile, beta, theta, FiberVariant::MinusRobin, grid, eig,
                                      options.richardson);
      top_plus = std::max(top_plus, plus.values[n - 1]);
      next_plus = std::min(next_plus, plus.values[n]);
      next_minus = std::min(next_minus, minus.values[n]);
    }
    row.fiber_gap = next_plus - top_plus;
    row.certified_lower = next_minus - top_plus;
    row.residual = std::abs(row.fiber_gap - limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace leaky
