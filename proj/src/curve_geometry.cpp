#include "leaky/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "leaky/errors.hpp"
#include "leaky/quadrature.hpp"

namespace leaky {
namespace {

using quadrature::gauss_legendre;

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }

Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

bool on_segment(Vec2 p, Vec2 q, Vec2 r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

int orientation(Vec2 p, Vec2 q, Vec2 r, double scale) {
  const double v = cross(q - p, r - p);
  const double eps = 1e-14 * scale * scale;
  if (std::abs(v) <= eps) return 0;
  return v > 0 ? 1 : -1;
}

bool segments_intersect(Vec2 p1, Vec2 q1, Vec2 p2, Vec2 q2, double scale) {
  const int o1 = orientation(p1, q1, p2, scale);
  const int o2 = orientation(p1, q1, q2, scale);
  const int o3 = orientation(p2, q2, p1, scale);
  const int o4 = orientation(p2, q2, q1, scale);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, q1, p2)) return true;
  if (o2 == 0 && on_segment(p1, q1, q2)) return true;
  if (o3 == 0 && on_segment(p2, q2, p1)) return true;
  if (o4 == 0 && on_segment(p2, q2, q1)) return true;
  return false;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

CurveGeometry::CurveGeometry(const CurvatureProfile& profile) : profile_(profile) {
  if (!profile.periodic()) {
    throw DomainError("CurveGeometry(profile) needs a periodic profile; pass an explicit span");
  }
  periodic_ = true;
  build(0.0, profile.period());
  turning_ = phase_nodes_.back();
}

CurveGeometry::CurveGeometry(const CurvatureProfile& profile, double lo, double hi)
    : profile_(profile) {
  if (!(lo <= 0.0 && hi >= 0.0 && hi > lo)) {
    throw DomainError("curve cache span must contain s = 0");
  }
  build(lo, hi);
}

void CurveGeometry::build(double lo, double hi) {
  const double target = periodic_ ? profile_.period() / 1024.0 : 1.0 / 32.0;
  const auto below = static_cast<int>(std::ceil(-lo / target - 1e-12));
  const auto above = static_cast<int>(std::ceil(hi / target - 1e-12));
  h_ = target;
  if (periodic_) {
    h_ = hi / static_cast<double>(above);
  }
  lo_ = -below * h_;
  const int n = below + above + 1;
  phase_nodes_.assign(n, 0.0);
  point_nodes_.assign(n, Vec2{});

  const auto gamma = [this](double t) { return profile_(t); };
  const auto step = [&](int from, int to) {
    const double a = lo_ + from * h_;
    const double b = lo_ + to * h_;
    const double whole = gauss_legendre(gamma, a, b);
    const double mid = 0.5 * (a + b);
    const double halves = gauss_legendre(gamma, a, mid) + gauss_legendre(gamma, mid, b);
    const double scale = h_ * (1.0 + std::abs(profile_(a)) + std::abs(profile_(mid)));
    if (!std::isfinite(whole) || std::abs(whole - halves) > 1e-10 * scale) {
      throw NumericalError("turning-angle quadrature did not converge near s = " +
                           format_double(a) + "; curvature profile too oscillatory");
    }
    const double phi0 = phase_nodes_[from];
    const auto tangent = [&](double t) {
      const double phi = phi0 + gauss_legendre(gamma, a, t);
      return Vec2{std::cos(-phi), std::sin(-phi)};
    };
    phase_nodes_[to] = phi0 + halves;
    point_nodes_[to] = point_nodes_[from] + gauss_legendre(tangent, a, b);
  };
  for (int i = below; i + 1 < n; ++i) step(i, i + 1);
  for (int i = below; i > 0; --i) step(i, i - 1);
}

CurveGeometry::Local CurveGeometry::local(double s) const {
  const int last = static_cast<int>(phase_nodes_.size()) - 1;
  int i = static_cast<int>(std::floor((s - lo_) / h_));
  i = std::clamp(i, 0, std::max(0, last - 1));
  const double a = lo_ + i * h_;
  const auto gamma = [this](double t) { return profile_(t); };
  const double phi0 = phase_nodes_[i];
  const auto tangent = [&](double t) {
    const double phi = phi0 + quadrature::gauss_legendre(gamma, a, t);
    return Vec2{std::cos(-phi), std::sin(-phi)};
  };
  return {phi0 + quadrature::gauss_legendre(gamma, a, s),
          point_nodes_[i] + quadrature::gauss_legendre(tangent, a, s)};
}

double CurveGeometry::phase(double s) const {
  if (periodic_) {
    const double L = profile_.period();
    const double m = std::floor(s / L);
    return m * turning_ + local(s - m * L).phase;
  }
  if (s < lo_ - 1e-12 || s > lo_ + h_ * (phase_nodes_.size() - 1) + 1e-12) {
    throw DomainError("arc length " + format_double(s) + " outside the cached curve span");
  }
  return local(s).phase;
}

Vec2 CurveGeometry::point(double s) const {
  if (!periodic_) {
    if (s < lo_ - 1e-12 || s > lo_ + h_ * (phase_nodes_.size() - 1) + 1e-12) {
      throw DomainError("arc length " + format_double(s) + " outside the cached curve span");
    }
    return local(s).point;
  }
  const double L = profile_.period();
  const auto m = static_cast<long>(std::floor(s / L));
  const Vec2 base = local(s - static_cast<double>(m) * L).point;
  const Vec2 K = point_nodes_.back();
  const double alpha = -turning_;
  Vec2 offset{};
  if (m >= 0) {
    for (long i = 0; i < m; ++i) offset = offset + rotate(K, static_cast<double>(i) * alpha);
  } else {
    for (long i = m; i < 0; ++i) offset = offset - rotate(K, static_cast<double>(i) * alpha);
  }
  return offset + rotate(base, static_cast<double>(m) * alpha);
}

Vec2 CurveGeometry::tangent(double s) const {
  const double phi = phase(s);
  return {std::cos(-phi), std::sin(-phi)};
}

Vec2 CurveGeometry::tube(double s, double u) const {
  const Vec2 t = tangent(s);
  return point(s) + u * Vec2{-t.y, t.x};
}

CurveSample CurveGeometry::sample(double s) const {
  CurveSample out;
  out.s = s;
  out.phase = phase(s);
  out.tangent = {std::cos(-out.phase), std::sin(-out.phase)};
  out.point = point(s);
  return out;
}

PeriodVector CurveGeometry::period_vector() const {
  if (!periodic_) throw DomainError("period vector needs a periodic profile");
  const Vec2 K = point_nodes_.back();
  return {K.x, K.y, K.x > 0.0};
}

std::vector<CurveSample> reconstruct_curve(const CurvatureProfile& profile,
                                           std::span<const double> s_grid) {
  if (s_grid.empty()) throw DomainError("reconstruct_curve: empty arc-length grid");
  if (!std::is_sorted(s_grid.begin(), s_grid.end())) {
    throw DomainError("reconstruct_curve: arc-length grid must be sorted");
  }
  std::vector<CurveSample> out;
  out.reserve(s_grid.size());
  if (profile.periodic()) {
    const CurveGeometry geometry(profile);
    for (double s : s_grid) out.push_back(geometry.sample(s));
  } else {
    const CurveGeometry geometry(profile, std::min(0.0, s_grid.front()),
                                 std::max(0.0, s_grid.back()));
    for (double s : s_grid) out.push_back(geometry.sample(s));
  }
  return out;
}

PeriodVector period_vector(const CurvatureProfile& profile) {
  return CurveGeometry(profile).period_vector();
}

SupNorms sup_norms(const CurvatureProfile& profile, int scan_points) {
  const double L = profile.period();
  const int n = std::max(scan_points, 16);
  const double h = L / n;
  std::vector<CurvatureJet> jets(n);
  for (int i = 0; i < n; ++i) jets[i] = profile.jet(i * h);

  // One Newton step on f' from a grid maximum of |f|, with central differences
  // standing in for f' and f''.
  const auto refine = [&](auto component) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fm = component(jets[(i + n - 1) % n]);
      const double f0 = component(jets[i]);
      const double fp = component(jets[(i + 1) % n]);
      const double a0 = std::abs(f0);
      best = std::max(best, a0);
      if (a0 < std::abs(fm) || a0 < std::abs(fp)) continue;
      const double curv = fp - 2.0 * f0 + fm;
      if (curv == 0.0) continue;
      const double dx = -0.5 * h * (fp - fm) / curv;
      if (std::abs(dx) > h) continue;
      best = std::max(best, std::abs(component(profile.jet(i * h + dx))));
    }
    return best;
  };
  return {refine([](const CurvatureJet& j) { return j.value; }),
          refine([](const CurvatureJet& j) { return j.d1; }),
          refine([](const CurvatureJet& j) { return j.d2; })};
}

bool sampled_tube_injective(const CurveGeometry& geometry, double halfwidth, int points) {
  const CurvatureProfile& profile = geometry.profile();
  const double L = profile.period();
  const PeriodVector K = geometry.period_vector();
  const int n = std::max(points, 8);
  std::vector<Vec2> centre(n), lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const double s = L * i / n;
    if (halfwidth * std::abs(profile(s)) >= 1.0) return false;
    const CurveSample c = geometry.sample(s);
    const Vec2 normal{-c.tangent.y, c.tangent.x};
    centre[i] = c.point;
    lo[i] = c.point - halfwidth * normal;
    hi[i] = c.point + halfwidth * normal;
    if (i > 0) {
      const double xmin = std::min(lo[i].x, hi[i].x);
      const double xmax = std::max(lo[i].x, hi[i].x);
      if (!(xmin > 0.0 && xmax < K.K1)) return false;
    }
  }
  const double scale = std::max({1.0, halfwidth, std::abs(K.K1)});
  const double reach = 2.0 * halfwidth * (1.0 + 1e-12);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (norm(centre[i] - centre[j]) > reach) continue;
      if (segments_intersect(lo[i], hi[i], lo[j], hi[j], scale)) return false;
    }
  }
  return true;
}

bool AssumptionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const AssumptionEntry* AssumptionReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

AssumptionReport check_assumptions(const CurvatureProfile& profile, double halfwidth,
                                   int sweep_points) {
  AssumptionReport report;
  report.halfwidth = halfwidth;
  report.entries.push_back({"A.1", true, "closed-form profile, C^2 (in fact smooth) by construction"});
  if (!profile.periodic()) {
    report.entries.push_back({"A.2", false, "profile is not periodic"});
    for (const char* id : {"A.3", "A.4", "A.5"}) {
      report.entries.push_back({id, false, "requires a periodic profile"});
    }
    report.a0_estimate = 0.0;
    return report;
  }
  const double L = profile.period();
  report.entries.push_back({"A.2", true, "periodic with L = " + format_double(L)});
  report.warnings.push_back(
      "the choice of the initial point s = 0 affects A.4 and A.5; use the profile shift to re-base");

  const CurveGeometry geometry(profile);
  report.norms = sup_norms(profile);
  report.period = geometry.period_vector();
  report.mean_curvature_integral = geometry.period_turning();

  const double a3_tol = 1e-10 * std::max(1.0, L * report.norms.gamma);
  const bool structural = profile.kind() == ProfileKind::FourierSeries;
  const bool a3 = std::abs(report.mean_curvature_integral) <= a3_tol;
  report.entries.push_back(
      {"A.3", a3,
       std::string(structural ? "structural (no constant Fourier term); " : "") +
           "int_0^L gamma = " + format_double(report.mean_curvature_integral)});
  report.entries.push_back(
      {"A.4", report.period.a4_pass, "K1 = " + format_double(report.period.K1)});

  double max_phase = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    max_phase = std::max(max_phase, std::abs(geometry.phase(L * i / 4096.0)));
  }
  report.max_abs_phase = max_phase;
  report.phase_condition = max_phase < 0.5 * std::numbers::pi;
  report.jacobian_positive = halfwidth > 0.0 && halfwidth * report.norms.gamma < 1.0;
  report.sampled_injective =
      halfwidth > 0.0 && a3 && sampled_tube_injective(geometry, halfwidth, sweep_points);

  if (!a3) {
    report.a0_estimate = 0.0;
  } else if (report.norms.gamma == 0.0) {
    report.a0_estimate = report.period.a4_pass ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    const int points = std::max(200, sweep_points / 4);
    double lo = 0.0;
    double hi = (1.0 - 1e-9) / report.norms.gamma;
    if (sampled_tube_injective(geometry, hi, points)) {
      lo = hi;
    } else if (!sampled_tube_injective(geometry, hi * 1e-6, points)) {
      hi = 0.0;
    } else {
      lo = hi * 1e-6;
      for (int it = 0; it < 40 && hi - lo > 1e-6 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sampled_tube_injective(geometry, mid, points) ? lo : hi) = mid;
      }
    }
    report.a0_estimate = lo;
  }

  const bool a5 = report.jacobian_positive && report.sampled_injective;
  std::ostringstream detail;
  detail << "sampled injectivity " << (report.sampled_injective ? "pass" : "fail") << " at a = "
         << format_double(halfwidth) << " (" << sweep_points << " normals); a*gamma_+ = "
         << format_double(halfwidth * report.norms.gamma) << "; max|phase| = "
         << format_double(max_phase)
         << (report.phase_condition ? " < pi/2 (sufficient condition holds)"
                                    : " >= pi/2 (sufficient condition not met)")
         << "; sampled a0 estimate = "
         << (std::isinf(report.a0_estimate) ? std::string("inf") : format_double(report.a0_estimate));
  report.entries.push_back({"A.5", a5, detail.str()});
  return report;
}

}  // namespace leaky
