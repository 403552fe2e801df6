#include "leaky/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leaky/errors.hpp"

namespace leaky {

int TridiagonalPencil::count_below(double lambda) const {
  const int n = size();
  int negatives = 0;
  double pivot = 1.0;
  for (int i = 0; i < n; ++i) {
    double d = diag[i] - lambda * mass[i];
    if (i > 0) d -= off[i - 1] * off[i - 1] / pivot;
    if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + 1.0);
    if (d < 0.0) ++negatives;
    pivot = d;
  }
  return negatives;
}

void TridiagonalPencil::spectrum_bounds(double& lo, double& hi) const {
  const int n = size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, (diag[i] - radius) / mass[i]);
    hi = std::max(hi, (diag[i] + radius) / mass[i]);
  }
}

double TridiagonalPencil::eigenvalue(int k, double rel_tol) const {
  if (k < 0 || k >= size()) throw DomainError("tridiagonal eigenvalue index out of range");
  for (double m : mass) {
    if (!(m > 0.0)) throw DomainError("tridiagonal mass must be positive");
  }
  double lo = 0.0;
  double hi = 0.0;
  spectrum_bounds(lo, hi);
  lo -= 1.0;
  hi += 1.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace leaky
