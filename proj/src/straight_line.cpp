#include "leaky/straight_line.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leaky/errors.hpp"
#include "leaky/tridiagonal.hpp"

namespace leaky {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Least-squares slope of log|gamma| against log|s| over |s| in [R/2, R].
void tail_fit(const CurvatureProfile& profile, double R, double& tau, double& K) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int side : {-1, 1}) {
    for (int i = 0; i <= 64; ++i) {
      const double s = side * (0.5 * R + 0.5 * R * i / 64.0);
      const double g = std::abs(profile(s));
      if (g > 0.0 && std::isfinite(g)) {
        xs.push_back(std::log(std::abs(s)));
        ys.push_back(std::log(g));
      }
    }
  }
  if (xs.size() < 4) {
    tau = std::numeric_limits<double>::infinity();
    K = 0.0;
    return;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  tau = -sxy / sxx;
  K = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) K = std::max(K, std::exp(ys[i] + tau * xs[i]));
}

TridiagonalPencil line_pencil(const CurvatureProfile& profile, double R, int n, double kappa,
                              LineBoundary boundary) {
  const double h = 2.0 * R / n;
  TridiagonalPencil p;
  p.diag.assign(n + 1, 2.0 / h);
  p.off.assign(n, -1.0 / h);
  p.mass.assign(n + 1, h);
  p.diag.front() = p.diag.back() = 1.0 / h + kappa;
  p.mass.front() = p.mass.back() = 0.5 * h;
  for (int i = 0; i <= n; ++i) {
    const double g = profile(-R + i * h);
    p.diag[i] -= 0.25 * g * g * p.mass[i];
  }
  if (boundary == LineBoundary::Dirichlet) {
    TridiagonalPencil inner;
    inner.diag.assign(p.diag.begin() + 1, p.diag.end() - 1);
    inner.off.assign(p.off.begin() + 1, p.off.end() - 1);
    inner.mass.assign(p.mass.begin() + 1, p.mass.end() - 1);
    return inner;
  }
  return p;
}

// Negative eigenvalues on one grid. With the decaying boundary each level
// solves mu = mu(kappa) with kappa = sqrt(-mu) by fixed-point iteration.
std::vector<double> grid_levels(const CurvatureProfile& profile, double R, int n,
                                LineBoundary boundary) {
  std::vector<double> levels;
  const double floor = -1e-13;
  if (boundary == LineBoundary::Dirichlet) {
    const TridiagonalPencil p = line_pencil(profile, R, n, 0.0, boundary);
    const int neg = p.count_below(floor);
    for (int j = 0; j < neg; ++j) levels.push_back(p.eigenvalue(j));
    return levels;
  }
  const int candidates = line_pencil(profile, R, n, 0.0, boundary).count_below(floor);
  for (int j = 0; j < candidates; ++j) {
    double mu = line_pencil(profile, R, n, 0.0, boundary).eigenvalue(j);
    bool bound = mu < floor;
    for (int it = 0; bound && it < 200; ++it) {
      const double next = line_pencil(profile, R, n, std::sqrt(-mu), boundary).eigenvalue(j);
      const double change = std::abs(next - mu);
      mu = next;
      if (!(mu < floor)) bound = false;
      if (change <= 1e-15 * std::abs(mu)) break;
    }
    if (bound) levels.push_back(mu);
  }
  return levels;
}

std::vector<double> extrapolated(const CurvatureProfile& profile, double R, int n,
                                 LineBoundary boundary) {
  const auto coarse = grid_levels(profile, R, n, boundary);
  const auto fine = grid_levels(profile, R, 2 * n, boundary);
  const std::size_t m = std::min(coarse.size(), fine.size());
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
  return out;
}

}  // namespace

bool DecayingProfileReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const AssumptionEntry* DecayingProfileReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

DecayingProfileReport check_decay_assumptions(const CurvatureProfile& profile, double R,
                                              int samples) {
  if (!(R > 0.0)) throw DomainError("truncation halfwidth R must be positive");
  if (samples < 3) throw DomainError("need at least 3 samples");
  DecayingProfileReport r;
  r.R = R;

  bool finite = true;
  for (int i = 0; i < samples; ++i) {
    const double s = -R + 2.0 * R * i / (samples - 1);
    const CurvatureJet j = profile.jet(s);
    finite = finite && std::isfinite(j.value) && std::isfinite(j.d1) && std::isfinite(j.d2);
    r.sup_gamma = std::max(r.sup_gamma, std::abs(j.value));
  }
  r.entries.push_back({"A.6", finite,
                       finite ? "closed-form profile, gamma'' finite on all samples"
                              : "non-finite derivative sample"});
  const bool nonzero = !profile.identically_zero() && r.sup_gamma > 0.0;
  r.entries.push_back(
      {"A.7", nonzero, nonzero ? "sup |gamma| = " + fmt(r.sup_gamma) : "gamma vanishes identically"});

  r.c_fit = 1.0;
  if (nonzero) {
    const CurveGeometry geom(profile, -R, R);
    std::vector<Vec2> pts(samples);
    std::vector<double> ss(samples);
    for (int i = 0; i < samples; ++i) {
      ss[i] = -R + 2.0 * R * i / (samples - 1);
      pts[i] = geom.point(ss[i]);
    }
    for (int i = 0; i < samples; ++i) {
      for (int k = i + 1; k < samples; ++k) {
        const double d = std::hypot(pts[k].x - pts[i].x, pts[k].y - pts[i].y);
        r.c_fit = std::min(r.c_fit, d / (ss[k] - ss[i]));
      }
    }
  }
  const bool chord = r.c_fit > 1e-6;
  r.entries.push_back({"A.8", chord, "sampled chord-arc ratio " + fmt(r.c_fit)});

  tail_fit(profile, R, r.tau_fit, r.K_fit);
  const bool decay = r.tau_fit > 1.25;
  r.entries.push_back({"A.9", decay,
                       std::isinf(r.tau_fit) ? "tail vanishes to machine precision"
                                             : "fitted tau = " + fmt(r.tau_fit) +
                                                   (decay ? " > 5/4" : " <= 5/4")});
  return r;
}

LineSpectrum line_discrete_spectrum(const CurvatureProfile& profile, double R, int n_points,
                                    LineBoundary boundary) {
  if (!(R > 0.0)) throw DomainError("truncation halfwidth R must be positive");
  if (n_points < 16) throw DomainError("n_points must be >= 16");
  LineSpectrum out;
  out.R = R;
  out.n_points = n_points;
  out.boundary = boundary;
  out.mu = extrapolated(profile, R, n_points, boundary);
  out.count = static_cast<int>(out.mu.size());
  const auto wide = extrapolated(profile, 2.0 * R, 2 * n_points, boundary);
  out.convergence_flag = wide.size() == out.mu.size();
  for (std::size_t j = 0; j < std::min(wide.size(), out.mu.size()); ++j) {
    out.max_change = std::max(out.max_change, std::abs(wide[j] - out.mu[j]));
  }
  out.convergence_flag = out.convergence_flag && out.max_change < 1e-7;
  return out;
}

std::vector<LineAsymptoticRow> line_asymptotics(const LineSpectrum& spectrum,
                                                const std::vector<double>& betas) {
  if (!spectrum.convergence_flag) {
    throw DomainError("line spectrum not converged under R -> 2R; refusing asymptotic table");
  }
  std::vector<LineAsymptoticRow> rows;
  for (double beta : betas) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    LineAsymptoticRow row;
    row.beta = beta;
    row.threshold = -0.25 * beta * beta;
    for (double mu : spectrum.mu) row.lambda.push_back(row.threshold + mu);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace leaky
