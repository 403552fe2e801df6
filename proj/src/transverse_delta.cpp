#include "leaky/transverse_delta.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "leaky/errors.hpp"

namespace leaky {

namespace {

void validate(const TransverseSpec& spec) {
  if (!(spec.a > 0.0) || !std::isfinite(spec.a)) throw DomainError("halfwidth a must be positive");
  if (!(spec.beta > 0.0) || !std::isfinite(spec.beta)) {
    throw DomainError("coupling beta must be positive");
  }
  if (spec.variant == TransverseVariant::RobinMinus && !(spec.gamma_plus >= 0.0)) {
    throw DomainError("RobinMinus requires gamma_plus >= 0");
  }
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Bisection on [lo, hi] for f with f(lo) < 0 < f(hi).
template <class F>
double bisect(F&& f, double lo, double hi) {
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * kEps * hi) break;
  }
  return 0.5 * (lo + hi);
}

// Offset x = beta/2 - k in (0, beta/2).
TransverseMode solve_plus(const TransverseSpec& spec) {
  const double beta = spec.beta;
  const double a = spec.a;
  if (beta * a <= 2.0) {
    std::ostringstream os;
    os << "DirichletPlus secular equation has no sign change: beta a = " << beta * a
       << " <= 2, no negative eigenvalue";
    throw NumericalError(os.str());
  }
  const auto h = [&](double x) {
    const double k = 0.5 * beta - x;
    return x - 2.0 * k / std::expm1(2.0 * k * a);
  };
  const double x = bisect(h, 0.0, 0.5 * beta);
  TransverseMode m;
  m.k = 0.5 * beta - x;
  m.excess = x * (beta - x);
  m.zeta = -m.k * m.k;
  m.bound_lo = -0.25 * beta * beta;
  m.bound_hi = m.bound_lo + 2.0 * beta * beta * std::exp(-0.5 * beta * a);
  m.hypotheses_hold = beta * a > 8.0 / 3.0;
  m.within_bounds = m.excess > 0.0 && m.excess < 2.0 * beta * beta * std::exp(-0.5 * beta * a);
  return m;
}

// Offset x = k - beta/2 > 0.
TransverseMode solve_minus(const TransverseSpec& spec) {
  const double beta = spec.beta;
  const double a = spec.a;
  const double g = spec.gamma_plus;
  const auto G = [&](double x) {
    const double k = 0.5 * beta + x;
    const double one_minus_t = 2.0 / (std::exp(2.0 * k * a) + 1.0);
    return 2.0 * x * (k - g) / k - one_minus_t * (2.0 * k + beta * g / k);
  };
  double span = beta;
  int widen = 0;
  while (!(G(span) > 0.0)) {
    span *= 2.0;
    if (++widen > 60) {
      std::ostringstream os;
      os << "RobinMinus secular equation has no sign change for beta = " << beta << ", a = " << a
         << ", gamma_plus = " << g;
      throw NumericalError(os.str());
    }
  }
  const double x = bisect(G, 0.0, span);
  TransverseMode m;
  m.k = 0.5 * beta + x;
  m.excess = -x * (beta + x);
  m.zeta = -m.k * m.k;
  const double width = 2205.0 / 16.0 * beta * beta * std::exp(-0.5 * beta * a);
  m.bound_hi = -0.25 * beta * beta;
  m.bound_lo = m.bound_hi - width;
  m.hypotheses_hold = beta * a > 8.0 && beta > 8.0 / 3.0 * g;
  m.within_bounds = m.excess < 0.0 && m.excess > -width;
  return m;
}

}  // namespace

std::string to_string(TransverseVariant variant) {
  return variant == TransverseVariant::DirichletPlus ? "DirichletPlus" : "RobinMinus";
}

TransverseMode solve_transverse(const TransverseSpec& spec) {
  validate(spec);
  return spec.variant == TransverseVariant::DirichletPlus ? solve_plus(spec) : solve_minus(spec);
}

TridiagonalPencil transverse_pencil(const TransverseSpec& spec, int n_points) {
  validate(spec);
  if (n_points < 4 || n_points % 2 != 0) throw DomainError("n_points must be even and >= 4");
  const double h = 2.0 * spec.a / n_points;
  const int nodes = n_points + 1;
  const int centre = n_points / 2;
  TridiagonalPencil full;
  full.diag.assign(nodes, 2.0 / h);
  full.off.assign(nodes - 1, -1.0 / h);
  full.mass.assign(nodes, h);
  full.diag.front() = full.diag.back() = 1.0 / h;
  full.mass.front() = full.mass.back() = 0.5 * h;
  full.diag[centre] -= spec.beta;
  if (spec.variant == TransverseVariant::RobinMinus) {
    full.diag.front() -= spec.gamma_plus;
    full.diag.back() -= spec.gamma_plus;
    return full;
  }
  TridiagonalPencil inner;
  inner.diag.assign(full.diag.begin() + 1, full.diag.end() - 1);
  inner.off.assign(full.off.begin() + 1, full.off.end() - 1);
  inner.mass.assign(full.mass.begin() + 1, full.mass.end() - 1);
  return inner;
}

int count_negative_modes(const TransverseSpec& spec, int n_points) {
  return transverse_pencil(spec, n_points).count_below(0.0);
}

double fd_transverse_eigenvalue(const TransverseSpec& spec, int n_points) {
  const double coarse = transverse_pencil(spec, n_points).eigenvalue(0);
  const double fine = transverse_pencil(spec, 2 * n_points).eigenvalue(0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace leaky
