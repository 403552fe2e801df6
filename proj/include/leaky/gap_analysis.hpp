#pragma once

#include <functional>
#include <string>
#include <vector>

#include "leaky/curvature.hpp"
#include "leaky/hill_floquet.hpp"

namespace leaky {

/// V(x) = b_0 + sum_j a_j sin(2 pi j x / P) + b_j cos(2 pi j x / P) on a period P.
/// Vectors are indexed by j, entry 0 unused for a and b (b0 holds the mean).
struct FourierDecomposition {
  double period = 1.0;
  int max_index = 0;
  double b0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  /// residual_sup[n] = sup |V - b0 - a_n sin - b_n cos| on a 4096-point grid.
  std::vector<double> residual_sup;
  double mean_square = 0.0;  // (1/P) int V^2

  double amplitude(int n) const;
  /// |sum (a_j^2 + b_j^2) / 2 + b0^2 - mean_square|, the truncated Parseval defect.
  double parseval_defect() const;
};

FourierDecomposition fourier_decompose(const std::function<double(double)>& v, double period,
                                       int max_index);

/// Decomposition of gamma^2 / 4 on (0, L): (c_j, d_j) in a and b.
FourierDecomposition curvature_decompose(const CurvatureProfile& profile, int max_index);

enum class GapVerdict { CriterionHolds, AmplitudeZero, AmplitudeTooLarge, ResidualTooLarge };

std::string to_string(GapVerdict verdict);

struct GapCertificate {
  int n = 0;
  double amplitude = 0.0;
  double upper_bound = 0.0;  // 12 pi^2 n^2 / P^2
  double residual_sup = 0.0;
  GapVerdict verdict = GapVerdict::AmplitudeZero;
};

/// Sufficient gap-opening condition at index n; arithmetic on the decomposition only.
GapCertificate check_gap_criterion(const FourierDecomposition& decomp, int n);

struct EdgeEigenvalues {
  std::vector<double> periodic;      // kappa_j, theta = 0
  std::vector<double> antiperiodic;  // nu_j, theta = pi
};

EdgeEigenvalues periodic_antiperiodic_eigenvalues(const std::function<double(double)>& v,
                                                  double period, int count, int n_modes = 128);

struct MathieuRow {
  double alpha = 0.0;
  double gap = 0.0;  // m_2 - m_1, antiperiodic
  double bound = 0.0;
  bool pass = false;
};

/// Antiperiodic first gap of -d^2/dx^2 + 2 alpha cos(2 pi x / a) against |alpha|.
/// Throws DomainError if some |alpha| >= 6 pi^2 / a^2.
std::vector<MathieuRow> mathieu_gap_check(const std::vector<double>& alphas, double a,
                                          int n_modes = 128);

struct BandInterval {
  int j = 0;
  double length = 0.0;  // B_j
  double lo = 0.0;
  double hi = 0.0;
};

struct GapInterval {
  int j = 0;
  double length = 0.0;  // G_j
};

struct GapReport {
  std::vector<BandInterval> bands;
  std::vector<GapInterval> gaps;
  /// Least m with G_m > gap_tolerance; 0 when none in the searched range.
  int first_open_gap = 0;
  int searched_up_to = 0;
  double gap_tolerance = 0.0;
  /// Largest disagreement between edge-column and grid-extremum band limits.
  double edge_grid_discrepancy = 0.0;
  std::vector<GapCertificate> criterion;

  bool found() const { return first_open_gap > 0; }
};

/// Default tolerance 1e-8 (1 + |mu_max - mu_min|).
double default_gap_tolerance(const FloquetBandTable& table);

/// B_j, G_j from the edge columns; a negative tolerance selects the default.
GapReport gap_report(const FloquetBandTable& table, double gap_tolerance = -1.0);

}  // namespace leaky
