#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace leaky {

using SparseHermitian = Eigen::SparseMatrix<std::complex<double>>;

struct SubspaceOptions {
  int count = 3;
  int block = 0;  // 0 selects count + 5
  double tol = 1e-8;  // residual tolerance relative to ||H||_inf
  int max_iter = 500;
  std::uint64_t seed = 0x5eed;
  /// Shift below the wanted eigenvalues; NaN selects a Gershgorin lower bound.
  double shift = std::numeric_limits<double>::quiet_NaN();
};

struct SubspaceResult {
  std::vector<double> values;
  std::vector<double> residuals;  // ||H x - lambda x|| per pair, unit x
  Eigen::MatrixXcd vectors;
  double norm_inf = 0.0;
  double shift = 0.0;
  int iterations = 0;
};

/// Number of eigenvalues of H strictly below sigma, from the inertia of the
/// sparse LDL^T factorization of H - sigma I.
int count_below(const SparseHermitian& h, double sigma);

/// Lowest eigenpairs of a sparse Hermitian matrix by shift-invert block
/// subspace iteration with Rayleigh-Ritz. The shift is lowered until the
/// factorization inertia shows no eigenvalue below it. Deterministic for a
/// fixed seed. Throws NumericalError after max_iter.
SubspaceResult lowest_eigenpairs(const SparseHermitian& h, const SubspaceOptions& options);

}  // namespace leaky
