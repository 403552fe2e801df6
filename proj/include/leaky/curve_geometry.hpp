#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "leaky/curvature.hpp"

namespace leaky {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct CurveSample {
  double s = 0.0;
  Vec2 point;
  Vec2 tangent;
  double phase = 0.0;  // running turning angle, integral of gamma over [0, s]
};

/// Translation between consecutive periods: Gamma(s + L) - Gamma(s).
struct PeriodVector {
  double K1 = 0.0;
  double K2 = 0.0;
  bool a4_pass = false;  // K1 > 0
};

struct SupNorms {
  double gamma = 0.0;
  double dgamma = 0.0;
  double d2gamma = 0.0;
};

/// Curve reconstructed from its curvature in the rotated frame where
/// Gamma(0) = (0, 0) and Gamma'(0) = (1, 0):
///
///   Gamma(s) = int_0^s (cos(-phi(t)), sin(-phi(t))) dt,  phi(t) = int_0^t gamma.
///
/// The turning angle and the curve are cached on a uniform cell grid by
/// composite 10-point Gauss-Legendre quadrature; evaluation inside a cell
/// integrates from the cell's left node. For periodic profiles the cache spans
/// one period and other points are obtained by rigid motions of that period.
/// The cache is immutable after construction, so concurrent reads are safe.
class CurveGeometry {
 public:
  /// Periodic profile: caches [0, L].
  explicit CurveGeometry(const CurvatureProfile& profile);
  /// Any profile: caches [lo, hi] (must contain 0).
  CurveGeometry(const CurvatureProfile& profile, double lo, double hi);

  const CurvatureProfile& profile() const { return profile_; }

  double phase(double s) const;
  Vec2 point(double s) const;
  Vec2 tangent(double s) const;
  /// Tube map Phi(s, u) = Gamma(s) + u * (-Gamma_2'(s), Gamma_1'(s)).
  Vec2 tube(double s, double u) const;
  CurveSample sample(double s) const;

  /// Gamma(L) - Gamma(0) (periodic profiles only).
  PeriodVector period_vector() const;
  /// Turning over one period, int_0^L gamma (periodic profiles only).
  double period_turning() const { return turning_; }

 private:
  struct Local {
    double phase;
    Vec2 point;
  };
  void build(double lo, double hi);
  Local local(double s) const;  // s inside the cache span

  CurvatureProfile profile_;
  bool periodic_ = false;
  double lo_ = 0.0;
  double h_ = 0.0;
  std::vector<double> phase_nodes_;
  std::vector<Vec2> point_nodes_;
  double turning_ = 0.0;
};

std::vector<CurveSample> reconstruct_curve(const CurvatureProfile& profile,
                                           std::span<const double> s_grid);

PeriodVector period_vector(const CurvatureProfile& profile);

/// (gamma_+, gamma'_+, gamma''_+): maxima over one period, found on a grid
/// scan and refined by one Newton step per candidate.
SupNorms sup_norms(const CurvatureProfile& profile, int scan_points = 4096);

struct AssumptionEntry {
  std::string id;  // "A.1" ... "A.5"
  bool pass = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionEntry> entries;
  double halfwidth = 0.0;
  PeriodVector period;
  SupNorms norms;
  double mean_curvature_integral = 0.0;
  double max_abs_phase = 0.0;
  bool phase_condition = false;   // max |phase| < pi/2 (sufficient for A.4/A.5)
  bool jacobian_positive = false;  // a * gamma_+ < 1
  bool sampled_injective = false;  // segment sweep, not a proof
  /// Largest halfwidth passing the sampled sweep; +infinity when unbounded.
  double a0_estimate = std::numeric_limits<double>::infinity();
  std::vector<std::string> warnings;

  bool all_pass() const;
  const AssumptionEntry* find(const std::string& id) const;
};

/// Numerical check of the periodic-curve assumptions at tube halfwidth a.
/// Failures are report entries, never exceptions.
AssumptionReport check_assumptions(const CurvatureProfile& profile, double halfwidth,
                                   int sweep_points = 2000);

/// Sampled injectivity of Phi on [0, L) x (-a, a) together with the strip
/// containment Phi((0, L) x (-a, a)) in (0, K1) x R. Segment-intersection
/// sweep over `points` normal segments.
bool sampled_tube_injective(const CurveGeometry& geometry, double halfwidth, int points);

}  // namespace leaky
