#include "leaky/fiber2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "leaky/curve_geometry.hpp"
#include "leaky/errors.hpp"
#include "leaky/hill_floquet.hpp"
#include "leaky/transverse_delta.hpp"

namespace leaky {

namespace {

using cplx = std::complex<double>;

bool is_plus(FiberVariant v) {
  return v == FiberVariant::PlusDirichlet || v == FiberVariant::PlusSeparated;
}

bool is_separated(FiberVariant v) {
  return v == FiberVariant::PlusSeparated || v == FiberVariant::MinusSeparated;
}

void validate_grid(const StripGrid& g) {
  if (g.n_s < 3) throw DomainError("n_s must be >= 3");
  if (g.n_u < 2 || g.n_u % 2 != 0) throw DomainError("n_u must be even and >= 2");
  if (!(g.L > 0.0) || !(g.a > 0.0)) throw DomainError("strip extents must be positive");
}

// Walks every term of the discrete form:
//   sink.edge(i, j, w, alpha)  ->  w |alpha f_j - f_i|^2
//   sink.diag(i, v)            ->  v |f_i|^2
// and returns the smallest potential value met.
template <class Sink>
double traverse(const CurvatureProfile& profile, double beta, double theta, FiberVariant variant,
                const StripGrid& g, int first_row, int rows, Sink& sink) {
  const int ns = g.n_s;
  const int nu = g.n_u;
  const double hs = g.h_s();
  const double hu = g.h_u();
  const cplx phase = std::polar(1.0, theta);
  const auto index = [&](int i, int k) {
    return static_cast<Eigen::Index>(i) * rows + (k - first_row);
  };
  const int last_row = first_row + rows - 1;
  const bool separated = is_separated(variant);
  const bool plus = is_plus(variant);

  ComparisonPotentials pots;
  if (separated) pots = comparison_potentials(profile, g.a);

  std::vector<CurvatureJet> node(ns);
  std::vector<double> mid(ns);
  for (int i = 0; i < ns; ++i) {
    node[i] = profile.jet(g.s(i));
    mid[i] = profile(g.s(i) + 0.5 * hs);
  }
  if (!separated) {
    for (int i = 0; i < ns; ++i) {
      for (double gamma : {node[i].value, mid[i]}) {
        if (1.0 - g.a * std::abs(gamma) <= 0.0) {
          std::ostringstream os;
          os << "metric degenerates: 1 + u gamma(s) <= 0 at s = " << g.s(i) << " for a = " << g.a;
          throw DomainError(os.str());
        }
      }
    }
  }

  double vmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ns; ++i) {
    const int next = (i + 1) % ns;
    const cplx alpha = (i + 1 == ns) ? phase : cplx(1.0);
    for (int k = first_row; k <= last_row; ++k) {
      const double u = g.u(k);
      const double omega = (k == 0 || k == nu) ? 0.5 : 1.0;
      double metric = 0.0;
      double v = 0.0;
      if (separated) {
        metric = plus ? pots.plus_prefactor() : pots.minus_prefactor();
        v = plus ? pots.plus(node[i].value) : pots.minus(node[i].value);
      } else {
        const double jm = 1.0 + u * mid[i];
        metric = 1.0 / (jm * jm);
        v = strip_potential(profile, g.s(i), u);
      }
      vmin = std::min(vmin, v);
      sink.edge(index(i, k), index(next, k), hu * omega * metric / hs, alpha);
      sink.diag(index(i, k), hs * hu * omega * v);
    }
    for (int k = 0; k < nu; ++k) {
      const double w = hs / hu;
      const bool lo_in = k >= first_row;
      const bool hi_in = k + 1 <= last_row;
      if (lo_in && hi_in) {
        sink.edge(index(i, k), index(i, k + 1), w, cplx(1.0));
      } else if (lo_in) {
        sink.diag(index(i, k), w);
      } else if (hi_in) {
        sink.diag(index(i, k + 1), w);
      }
    }
    sink.diag(index(i, nu / 2), -beta * hs);
    if (!plus) {
      if (separated) {
        sink.diag(index(i, 0), -pots.gamma_plus * hs);
        sink.diag(index(i, nu), -pots.gamma_plus * hs);
      } else {
        const double gamma = node[i].value;
        sink.diag(index(i, nu), -0.5 * gamma / (1.0 + g.a * gamma) * hs);
        sink.diag(index(i, 0), 0.5 * gamma / (1.0 - g.a * gamma) * hs);
      }
    }
  }
  return vmin;
}

struct TripletSink {
  std::vector<Eigen::Triplet<cplx>> entries;
  void edge(Eigen::Index i, Eigen::Index j, double w, cplx alpha) {
    entries.emplace_back(i, i, w);
    entries.emplace_back(j, j, w);
    entries.emplace_back(i, j, -w * alpha);
    entries.emplace_back(j, i, -w * std::conj(alpha));
  }
  void diag(Eigen::Index i, double v) { entries.emplace_back(i, i, v); }
};

struct FormSink {
  const Eigen::VectorXcd& f;
  double sum = 0.0;
  void edge(Eigen::Index i, Eigen::Index j, double w, cplx alpha) {
    sum += w * std::norm(alpha * f[j] - f[i]);
  }
  void diag(Eigen::Index i, double v) { sum += v * std::norm(f[i]); }
};

void active_rows(FiberVariant variant, const StripGrid& g, int& first, int& rows) {
  if (is_plus(variant)) {
    first = 1;
    rows = g.n_u - 1;
  } else {
    first = 0;
    rows = g.n_u + 1;
  }
}

}  // namespace

std::string to_string(FiberVariant variant) {
  switch (variant) {
    case FiberVariant::PlusDirichlet:
      return "PlusDirichlet";
    case FiberVariant::MinusRobin:
      return "MinusRobin";
    case FiberVariant::PlusSeparated:
      return "PlusSeparated";
    case FiberVariant::MinusSeparated:
      return "MinusSeparated";
  }
  return "unknown";
}

double strip_potential(const CurvatureProfile& profile, double s, double u) {
  const CurvatureJet j = profile.jet(s);
  const double m = 1.0 + u * j.value;
  const double m2 = m * m;
  return 0.5 * u * j.d2 / (m2 * m) - 1.25 * u * u * j.d1 * j.d1 / (m2 * m2) -
         0.25 * j.value * j.value / m2;
}

SparseHermitian FiberProblem::standard_form() const {
  const Eigen::VectorXd d = mass.cwiseInverse().cwiseSqrt();
  SparseHermitian h = form;
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseHermitian::InnerIterator it(h, k); it; ++it) {
      it.valueRef() *= d[it.row()] * d[it.col()];
    }
  }
  return h;
}

FiberProblem assemble_fiber(const CurvatureProfile& profile, double beta, double theta,
                            FiberVariant variant, const StripGrid& grid) {
  validate_grid(grid);
  FiberProblem p;
  p.grid = grid;
  p.variant = variant;
  p.beta = beta;
  p.theta = theta;
  active_rows(variant, grid, p.first_row, p.rows);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.n_s) * p.rows;
  TripletSink sink;
  sink.entries.reserve(static_cast<std::size_t>(n) * 9);
  p.potential_min = traverse(profile, beta, theta, variant, grid, p.first_row, p.rows, sink);
  p.form.resize(n, n);
  p.form.setFromTriplets(sink.entries.begin(), sink.entries.end());
  p.mass.resize(n);
  const double cell = grid.h_s() * grid.h_u();
  for (int i = 0; i < grid.n_s; ++i) {
    for (int k = p.first_row; k < p.first_row + p.rows; ++k) {
      p.mass[p.index(i, k)] = (k == 0 || k == grid.n_u) ? 0.5 * cell : cell;
    }
  }
  return p;
}

double evaluate_form(const CurvatureProfile& profile, double beta, double theta,
                     FiberVariant variant, const StripGrid& grid, const Eigen::VectorXcd& f) {
  validate_grid(grid);
  int first = 0;
  int rows = 0;
  active_rows(variant, grid, first, rows);
  if (f.size() != static_cast<Eigen::Index>(grid.n_s) * rows) {
    throw DomainError("grid function size does not match the variant's active nodes");
  }
  FormSink sink{f};
  traverse(profile, beta, theta, variant, grid, first, rows, sink);
  return sink.sum;
}

std::vector<double> fiber_eigenvalues(const FiberProblem& problem,
                                      const FiberEigenOptions& options) {
  SubspaceOptions opts;
  opts.count = options.count;
  opts.tol = options.tol;
  opts.max_iter = options.max_iter;
  opts.seed = options.seed;
  opts.shift = -0.25 * problem.beta * problem.beta + std::min(0.0, problem.potential_min) - 1.0;
  return lowest_eigenpairs(problem.standard_form(), opts).values;
}

FiberLevels fiber_levels(const CurvatureProfile& profile, double beta, double theta,
                         FiberVariant variant, const StripGrid& grid,
                         const FiberEigenOptions& options, bool richardson) {
  FiberLevels out;
  const auto coarse = fiber_eigenvalues(assemble_fiber(profile, beta, theta, variant, grid), options);
  if (!richardson) {
    out.values = coarse;
    out.slack.assign(coarse.size(), 0.0);
    return out;
  }
  const auto fine =
      fiber_eigenvalues(assemble_fiber(profile, beta, theta, variant, grid.refined()), options);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    out.values.push_back((4.0 * fine[j] - coarse[j]) / 3.0);
    out.slack.push_back(std::abs(fine[j] - coarse[j]) / 3.0);
  }
  return out;
}

double bracketing_halfwidth(double beta) {
  if (!(beta > 1.0)) throw DomainError("a(beta) = 6 log(beta) / beta needs beta > 1");
  return 6.0 * std::log(beta) / beta;
}

int adaptive_rows(double beta, double beta_h) {
  if (!(beta_h > 0.0)) throw DomainError("beta_h must be positive");
  const double a = bracketing_halfwidth(beta);
  int rows = static_cast<int>(std::ceil(2.0 * a * beta / beta_h));
  if (rows % 2 != 0) ++rows;
  return std::max(rows, 4);
}

std::string bracketing_precondition(const CurvatureProfile& profile, double beta) {
  if (!profile.periodic()) return "profile must be periodic";
  if (!(beta > 1.0)) return "beta > 1 (a(beta) = 6 log(beta) / beta must be positive)";
  const double a = bracketing_halfwidth(beta);
  std::ostringstream os;
  if (!(beta * a > 8.0)) {
    os << "beta a(beta) > 8 fails: beta a(beta) = " << beta * a;
    return os.str();
  }
  const SupNorms norms = sup_norms(profile);
  if (!(2.0 * a * norms.gamma < 1.0)) {
    os << "a(beta) < 1 / (2 gamma_+) fails: a(beta) = " << a << ", gamma_+ = " << norms.gamma;
    return os.str();
  }
  if (!sampled_tube_injective(CurveGeometry(profile), a, 400)) {
    os << "a(beta) < a0 fails: tube of halfwidth " << a << " is not injective (A.5, sampled)";
    return os.str();
  }
  return {};
}

FiberSpectrum bracketing_report(const CurvatureProfile& profile, double beta, double theta,
                                const BracketingOptions& options) {
  if (const std::string why = bracketing_precondition(profile, beta); !why.empty()) {
    throw DomainError("bracketing precondition violated: " + why);
  }
  const int count = options.count;
  FiberSpectrum r;
  r.theta = theta;
  r.beta = beta;
  r.a = bracketing_halfwidth(beta);
  r.grid = {options.n_s, options.n_u > 0 ? options.n_u : adaptive_rows(beta, options.beta_h),
            profile.period(), r.a};

  const SupNorms norms = sup_norms(profile);
  r.zeta_plus = solve_transverse({r.a, beta, 0.0, TransverseVariant::DirichletPlus}).zeta;
  r.zeta_minus = solve_transverse({r.a, beta, norms.gamma, TransverseVariant::RobinMinus}).zeta;

  const ComparisonPair pair = comparison_operators(profile, r.a, theta);
  r.mu_plus = floquet_eigenvalues(pair.plus, options.n_modes, count);
  r.mu_minus = floquet_eigenvalues(pair.minus, options.n_modes, count);
  r.mu = floquet_eigenvalues(comparison_hill(profile, theta), options.n_modes, count);

  FiberEigenOptions eig = options.eigen;
  eig.count = count;
  const FiberLevels plus =
      fiber_levels(profile, beta, theta, FiberVariant::PlusDirichlet, r.grid, eig, options.richardson);
  const FiberLevels minus =
      fiber_levels(profile, beta, theta, FiberVariant::MinusRobin, r.grid, eig, options.richardson);
  r.kappa_plus = plus.values;
  r.slack_plus = plus.slack;
  r.kappa_minus = minus.values;
  r.slack_minus = minus.slack;

  for (int j = 0; j < count; ++j) {
    r.tau_plus.push_back(r.zeta_plus + r.mu_plus[j]);
    r.tau_minus.push_back(r.zeta_minus + r.mu_minus[j]);
    r.lambda_hat.push_back(-0.25 * beta * beta + r.mu[j]);
    r.residual_plus.push_back(std::abs(r.kappa_plus[j] - r.lambda_hat[j]));
    r.residual_minus.push_back(std::abs(r.kappa_minus[j] - r.lambda_hat[j]));
    r.bracketing_ok.push_back(r.tau_minus[j] - r.slack_minus[j] <= r.kappa_minus[j] &&
                              r.kappa_plus[j] <= r.tau_plus[j] + r.slack_plus[j]);
  }
  return r;
}

}  // namespace leaky
