#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "leaky/curvature.hpp"

namespace leaky {

/// -p d^2/ds^2 + V(s) on (0, L) with u(L) = e^{i theta} u(0), u'(L) = e^{i theta} u'(0).
struct HillOperatorSpec {
  std::function<double(double)> potential;
  double kinetic_prefactor = 1.0;
  double theta = 0.0;
  double period = 1.0;
};

/// Fourier coefficients V_m = (1/L) int_0^L V(s) e^{-2 pi i m s / L} ds for
/// |m| <= 2 n_modes, computed by FFT on 4 n_modes samples. Throws
/// NumericalError when the spectrum has not decayed at the top of the range.
std::vector<std::complex<double>> potential_coefficients(const std::function<double(double)>& v,
                                                         double period, int n_modes);

/// Galerkin matrix of the Hill operator in the plane-wave basis
/// e^{i (2 pi k + theta) s / L} / sqrt(L), k = -n_modes..n_modes. Toeplitz in
/// the potential, diagonal in the kinetic part.
Eigen::MatrixXcd assemble_hill(const HillOperatorSpec& spec, int n_modes);
Eigen::MatrixXcd assemble_hill(const std::vector<std::complex<double>>& coefficients,
                               double kinetic_prefactor, double theta, double period, int n_modes);

/// Lowest `count` eigenvalues of the assembled matrix, ascending, with multiplicity.
std::vector<double> floquet_eigenvalues(const HillOperatorSpec& spec, int n_modes, int count);
std::vector<double> hermitian_lowest(const Eigen::MatrixXcd& matrix, int count);

/// S_theta = -d^2/ds^2 - gamma^2 / 4.
HillOperatorSpec comparison_hill(const CurvatureProfile& profile, double theta);

struct ComparisonPair {
  HillOperatorSpec plus;   // -(1 - a gamma_+)^{-2} d^2 + V_+
  HillOperatorSpec minus;  // -(1 + a gamma_+)^{-2} d^2 + V_-
};

/// Separated-variable comparison potentials V_+(s), V_-(s) at halfwidth a,
/// built from the sup norms of gamma, gamma', gamma''.
struct ComparisonPotentials {
  double a = 0.0;
  double gamma_plus = 0.0;
  double dgamma_plus = 0.0;
  double d2gamma_plus = 0.0;

  double plus(double gamma) const;
  double minus(double gamma) const;
  double plus_prefactor() const;   // (1 - a gamma_+)^{-2}
  double minus_prefactor() const;  // (1 + a gamma_+)^{-2}
};

/// Throws DomainError unless 0 < a < 1/(2 gamma_+).
ComparisonPotentials comparison_potentials(const CurvatureProfile& profile, double a);

/// Perturbed comparison operators U^{+-}_{a,theta}. Requires 0 < a < 1/(2 gamma_+).
ComparisonPair comparison_operators(const CurvatureProfile& profile, double a, double theta = 0.0);

struct FloquetBandTable {
  std::vector<double> theta;             // uniform grid 2 pi i / N, i = 0..N-1
  std::vector<std::vector<double>> mu;   // mu[i][j]: j-th eigenvalue at theta[i]
  std::vector<double> edge_zero;         // mu_j(0)
  std::vector<double> edge_pi;           // mu_j(pi)
  int count = 0;

  /// Largest |mu_j(theta) - mu_j(2 pi - theta)| over the grid.
  double symmetry_defect() const;
};

struct BandTableOptions {
  int theta_count = 65;
  int count = 8;
  int n_modes = 128;
  int jobs = 1;
};

/// Band table of S_theta. Throws NumericalError when the theta symmetry or
/// the edge interlacing is violated beyond tolerance (under-resolved n_modes).
FloquetBandTable band_table(const CurvatureProfile& profile, const BandTableOptions& options = {});

/// Same for an arbitrary Hill operator (theta field of `spec` ignored).
FloquetBandTable band_table(const HillOperatorSpec& spec, const BandTableOptions& options);

/// Tolerance used by the table invariants: 1e-9 (1 + max |mu|).
double table_tolerance(const FloquetBandTable& table);

}  // namespace leaky
