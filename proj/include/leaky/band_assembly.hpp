#pragma once

#include <vector>

#include "leaky/curvature.hpp"
#include "leaky/fiber2d.hpp"
#include "leaky/gap_analysis.hpp"
#include "leaky/hill_floquet.hpp"

namespace leaky {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Asymptotic band structure lambda_n(beta, theta) ~ -beta^2/4 + mu_n(theta).
struct BandStructureResult {
  double beta = 0.0;
  double a = 0.0;  // a(beta) = 6 log(beta) / beta
  std::vector<double> theta;
  std::vector<std::vector<double>> lambda_hat;  // lambda_hat[i][n]
  std::vector<Interval> bands;  // from the shifted edge columns
  std::vector<Interval> gaps;   // between consecutive bands
  GapReport limits;             // G_n of S_theta
};

/// Pure shift of the Floquet band table; throws AssumptionError when the
/// curve fails the periodic assumptions at halfwidth a(beta).
BandStructureResult assemble_bands(const CurvatureProfile& profile, double beta,
                                   const BandTableOptions& options = {});

/// Same, from an existing table, without the assumption check.
BandStructureResult shift_bands(const FloquetBandTable& table, double beta);

struct GapPersistenceRow {
  double beta = 0.0;
  double a = 0.0;
  double fiber_gap = 0.0;        // min_theta kappa+_{n+1} - max_theta kappa+_n
  double certified_lower = 0.0;  // min_theta kappa-_{n+1} - max_theta kappa+_n
  double limit = 0.0;            // G_n
  double residual = 0.0;         // |fiber_gap - G_n|
  double envelope = 0.0;         // log(beta) / beta
};

/// Fiber gap at theta in {0, pi} against the limiting gap G_n for each beta.
std::vector<GapPersistenceRow> gap_persistence_check(const CurvatureProfile& profile,
                                                     const std::vector<double>& betas, int n,
                                                     const BracketingOptions& options = {});

}  // namespace leaky
