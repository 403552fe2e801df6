#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leaky/curvature.hpp"
#include "leaky/subspace_eigen.hpp"

namespace leaky {

/// Uniform grid on (0, L) x (-a, a): s_i = i h_s (i < n_s, quasi-periodic wrap),
/// u_k = -a + k h_u (k = 0..n_u, n_u even so that u_{n_u/2} = 0).
struct StripGrid {
  int n_s = 128;
  int n_u = 128;
  double L = 1.0;
  double a = 0.1;

  double h_s() const { return L / n_s; }
  double h_u() const { return 2.0 * a / n_u; }
  double s(int i) const { return i * h_s(); }
  double u(int k) const { return -a + k * h_u(); }
  StripGrid refined() const { return {2 * n_s, 2 * n_u, L, a}; }
};

/// PlusDirichlet / MinusRobin: the curvilinear forms b+ / b-.
/// PlusSeparated / MinusSeparated: the separated-variable forms with the
/// comparison potentials V+(s), V-(s) and the constant metric prefactors.
enum class FiberVariant { PlusDirichlet, MinusRobin, PlusSeparated, MinusSeparated };

std::string to_string(FiberVariant variant);

/// V(s, u) of the strip forms.
double strip_potential(const CurvatureProfile& profile, double s, double u);

/// Discretized form: b(f, f) = f^H A f, |f|^2 = f^H diag(mass) f over the
/// active nodes. Dirichlet variants drop the rows k = 0 and k = n_u.
struct FiberProblem {
  StripGrid grid;
  FiberVariant variant = FiberVariant::PlusDirichlet;
  double beta = 0.0;
  double theta = 0.0;
  int first_row = 0;  // first active u index
  int rows = 0;       // active u rows
  SparseHermitian form;
  Eigen::VectorXd mass;
  double potential_min = 0.0;

  Eigen::Index size() const { return mass.size(); }
  Eigen::Index index(int i, int k) const {
    return static_cast<Eigen::Index>(i) * rows + (k - first_row);
  }
  /// M^{-1/2} A M^{-1/2}.
  SparseHermitian standard_form() const;
};

/// Throws DomainError when 1 + u gamma(s) <= 0 somewhere on the grid, when
/// n_u is odd, or (separated variants) when a >= 1 / (2 gamma_+).
FiberProblem assemble_fiber(const CurvatureProfile& profile, double beta, double theta,
                            FiberVariant variant, const StripGrid& grid);

/// Direct evaluation of the discrete form on a grid function laid out as in
/// FiberProblem::index, without building the matrix.
double evaluate_form(const CurvatureProfile& profile, double beta, double theta,
                     FiberVariant variant, const StripGrid& grid, const Eigen::VectorXcd& f);

struct FiberEigenOptions {
  int count = 3;
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 0x5eed;
};

/// Lowest eigenvalues of the discretized fiber operator.
std::vector<double> fiber_eigenvalues(const FiberProblem& problem, const FiberEigenOptions& options);

struct FiberLevels {
  std::vector<double> values;
  std::vector<double> slack;  // |fine - coarse| / 3, zero without Richardson
};

/// Fiber eigenvalues on `grid` and, with Richardson, on grid.refined(),
/// combined as (4 fine - coarse) / 3.
FiberLevels fiber_levels(const CurvatureProfile& profile, double beta, double theta,
                         FiberVariant variant, const StripGrid& grid,
                         const FiberEigenOptions& options, bool richardson = true);

struct FiberSpectrum {
  double theta = 0.0;
  double beta = 0.0;
  double a = 0.0;
  StripGrid grid;
  double zeta_plus = 0.0;
  double zeta_minus = 0.0;
  std::vector<double> mu;        // mu_j(theta) of S_theta
  std::vector<double> mu_plus;   // of U+
  std::vector<double> mu_minus;  // of U-
  std::vector<double> kappa_plus;
  std::vector<double> kappa_minus;
  std::vector<double> slack_plus;  // Richardson error estimate
  std::vector<double> slack_minus;
  std::vector<double> tau_plus;
  std::vector<double> tau_minus;
  std::vector<double> lambda_hat;  // -beta^2/4 + mu_j(theta)
  std::vector<double> residual_plus;   // |kappa+_j - lambda_hat_j|
  std::vector<double> residual_minus;  // |kappa-_j - lambda_hat_j|
  std::vector<bool> bracketing_ok;
};

struct BracketingOptions {
  int count = 3;
  int n_s = 128;
  int n_u = 128;  // 0 selects the beta-adaptive row count 12 log(beta) / beta_h
  double beta_h = 0.05;
  int n_modes = 128;
  bool richardson = true;
  FiberEigenOptions eigen;
};

/// a(beta) = 6 log(beta) / beta.
double bracketing_halfwidth(double beta);

/// Even u-row count with beta h_u <= beta_h at a = a(beta).
int adaptive_rows(double beta, double beta_h);

/// Precondition checks for bracketing_report at halfwidth a(beta); returns an
/// empty string when all hold, otherwise the failing inequality.
std::string bracketing_precondition(const CurvatureProfile& profile, double beta);

/// Separated-variable reference values tau, fiber eigenvalues kappa and the
/// sandwich flags tau-_j - slack <= kappa-_j, kappa+_j <= tau+_j + slack.
/// Throws DomainError naming the failing inequality.
FiberSpectrum bracketing_report(const CurvatureProfile& profile, double beta, double theta,
                                const BracketingOptions& options = {});

}  // namespace leaky
