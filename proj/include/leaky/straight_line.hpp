#pragma once

#include <limits>
#include <string>
#include <vector>

#include "leaky/curvature.hpp"
#include "leaky/curve_geometry.hpp"

namespace leaky {

struct DecayingProfileReport {
  double R = 0.0;
  double tau_fit = 0.0;  // +infinity when the tail vanishes to machine precision
  double K_fit = 0.0;
  double c_fit = 0.0;    // min |Gamma(s) - Gamma(t)| / |s - t| over the sampled pairs
  double sup_gamma = 0.0;
  std::vector<AssumptionEntry> entries;  // "A.6" ... "A.9"

  bool all_pass() const;
  const AssumptionEntry* find(const std::string& id) const;
};

/// Sampled checks of the asymptotic-straightness assumptions on [-R, R].
/// Failures are report entries.
DecayingProfileReport check_decay_assumptions(const CurvatureProfile& profile, double R,
                                              int samples = 801);

/// Truncation boundary for S = -d^2/ds^2 - gamma^2/4 on [-R, R].
/// Decaying imposes psi' = -sqrt(-mu) psi outward, which is exact where the
/// potential has died out; Dirichlet sets psi(+-R) = 0.
enum class LineBoundary { Decaying, Dirichlet };

struct LineSpectrum {
  std::vector<double> mu;  // ascending, all < 0
  int count = 0;
  double R = 0.0;
  int n_points = 0;
  LineBoundary boundary = LineBoundary::Decaying;
  bool convergence_flag = false;
  double max_change = 0.0;  // largest |mu_j(R) - mu_j(2R)|
};

/// Negative eigenvalues of S by second-order finite differences on [-R, R],
/// Richardson-extrapolated over n_points and 2 n_points, cross-checked
/// against the truncation at 2R (tolerance 1e-7).
LineSpectrum line_discrete_spectrum(const CurvatureProfile& profile, double R = 40.0,
                                    int n_points = 8192,
                                    LineBoundary boundary = LineBoundary::Decaying);

struct LineAsymptoticRow {
  double beta = 0.0;
  double threshold = 0.0;  // -beta^2/4, bottom of the essential spectrum
  std::vector<double> lambda;
};

/// lambda_j(beta) = -beta^2/4 + mu_j, valid for beta >= beta_0 (not computed).
/// Throws DomainError for an unconverged spectrum.
std::vector<LineAsymptoticRow> line_asymptotics(const LineSpectrum& spectrum,
                                                const std::vector<double>& betas);

}  // namespace leaky
