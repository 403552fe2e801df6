#pragma once

#include <vector>

namespace leaky {

/// Real symmetric tridiagonal pencil (A, M) with M diagonal and positive:
/// A has diagonal `diag` and off-diagonal `off` (size n - 1).
struct TridiagonalPencil {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> mass;

  int size() const { return static_cast<int>(diag.size()); }

  /// Number of eigenvalues of A x = lambda M x strictly below lambda
  /// (Sylvester inertia of A - lambda M via the LDL^T pivot signs).
  int count_below(double lambda) const;

  /// k-th eigenvalue (0-based, ascending) by bisection on count_below.
  double eigenvalue(int k, double rel_tol = 1e-15) const;

  /// Gershgorin-type enclosure of the whole spectrum.
  void spectrum_bounds(double& lo, double& hi) const;
};

}  // namespace leaky
