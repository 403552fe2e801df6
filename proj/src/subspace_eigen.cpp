#include "leaky/subspace_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "leaky/errors.hpp"

namespace leaky {

namespace {

using Solver = Eigen::SimplicialLDLT<SparseHermitian, Eigen::Lower>;

SparseHermitian shifted(const SparseHermitian& h, double sigma) {
  SparseHermitian id(h.rows(), h.cols());
  id.setIdentity();
  return h - std::complex<double>(sigma, 0.0) * id;
}

int negatives(const Solver& solver) {
  int n = 0;
  const auto d = solver.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i].real() < 0.0) ++n;
  }
  return n;
}

double norm_inf(const SparseHermitian& h) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(h.rows());
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseHermitian::InnerIterator it(h, k); it; ++it) rows[it.row()] += std::abs(it.value());
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

double gershgorin_lower(const SparseHermitian& h) {
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(h.rows());
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(h.rows());
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseHermitian::InnerIterator it(h, k); it; ++it) {
      if (it.row() == it.col()) {
        diag[it.row()] = it.value().real();
      } else {
        radius[it.row()] += std::abs(it.value());
      }
    }
  }
  return (diag - radius).minCoeff();
}

}  // namespace

int count_below(const SparseHermitian& h, double sigma) {
  Solver solver(shifted(h, sigma));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sparse LDL^T factorization failed at sigma = " + std::to_string(sigma));
  }
  return negatives(solver);
}

SubspaceResult lowest_eigenpairs(const SparseHermitian& h, const SubspaceOptions& options) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw DomainError("matrix must be square");
  if (options.count < 1 || options.count > n) throw DomainError("eigenvalue count out of range");
  const int block = static_cast<int>(
      std::min<Eigen::Index>(n, options.block > 0 ? options.block : options.count + 5));
  if (block < options.count) throw DomainError("block size smaller than count");

  SubspaceResult result;
  result.norm_inf = norm_inf(h);
  const double scale = std::max(result.norm_inf, 1.0);

  double sigma = std::isnan(options.shift) ? gershgorin_lower(h) - 1.0 : options.shift;
  Solver solver;
  double step = std::max(1.0, 1e-3 * std::abs(sigma));
  for (int attempt = 0;; ++attempt) {
    solver.compute(shifted(h, sigma));
    if (solver.info() == Eigen::Success && negatives(solver) == 0) break;
    if (attempt == 60) {
      throw NumericalError("could not find a shift below the spectrum");
    }
    sigma -= step;
    step *= 2.0;
  }
  result.shift = sigma;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd x(n, block);
  for (Eigen::Index j = 0; j < block; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = {normal(rng), normal(rng)};
  }

  Eigen::VectorXd ritz;
  Eigen::VectorXd res(block);
  for (int it = 1; it <= options.max_iter; ++it) {
    const Eigen::MatrixXcd y = solver.solve(x);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(y);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, block);
    const Eigen::MatrixXcd hq = h * q;
    Eigen::MatrixXcd t = q.adjoint() * hq;
    t = 0.5 * (t + t.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> small(t);
    if (small.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz eigensolve failed");
    ritz = small.eigenvalues();
    x = q * small.eigenvectors();
    const Eigen::MatrixXcd hx = hq * small.eigenvectors();
    for (int j = 0; j < block; ++j) res[j] = (hx.col(j) - ritz[j] * x.col(j)).norm();
    result.iterations = it;
    if (res.head(options.count).maxCoeff() <= options.tol * scale) break;
    if (it == options.max_iter) {
      std::ostringstream os;
      os << "subspace iteration did not converge in " << options.max_iter
         << " iterations (residual " << res.head(options.count).maxCoeff() << ", tolerance "
         << options.tol * scale << ")";
      throw NumericalError(os.str());
    }
  }
  result.values.assign(ritz.data(), ritz.data() + options.count);
  result.residuals.assign(res.data(), res.data() + options.count);
  result.vectors = x.leftCols(options.count);
  return result;
}

}  // namespace leaky
