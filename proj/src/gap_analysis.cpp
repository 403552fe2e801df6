#include "leaky/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "leaky/errors.hpp"

namespace leaky {

namespace {

constexpr int kResidualGrid = 4096;

}  // namespace

double FourierDecomposition::amplitude(int n) const {
  if (n < 1 || n > max_index) throw DomainError("Fourier index out of range");
  return std::hypot(a[n], b[n]);
}

double FourierDecomposition::parseval_defect() const {
  double sum = b0 * b0;
  for (int j = 1; j <= max_index; ++j) sum += 0.5 * (a[j] * a[j] + b[j] * b[j]);
  return std::abs(sum - mean_square);
}

FourierDecomposition fourier_decompose(const std::function<double(double)>& v, double period,
                                       int max_index) {
  if (max_index < 1) throw DomainError("max_index must be >= 1");
  if (!(period > 0.0)) throw DomainError("period must be positive");
  const int samples = std::max(8 * max_index, 64);
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) values[i] = v(period * i / samples);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, values);

  FourierDecomposition d;
  d.period = period;
  d.max_index = max_index;
  d.b0 = spectrum[0].real() / samples;
  d.a.assign(max_index + 1, 0.0);
  d.b.assign(max_index + 1, 0.0);
  for (int j = 1; j <= max_index; ++j) {
    // V_j = (b_j - i a_j) / 2
    d.b[j] = 2.0 * spectrum[j].real() / samples;
    d.a[j] = -2.0 * spectrum[j].imag() / samples;
  }

  std::vector<double> grid(kResidualGrid);
  double square = 0.0;
  for (int i = 0; i < kResidualGrid; ++i) {
    grid[i] = v(period * i / kResidualGrid);
    square += grid[i] * grid[i];
  }
  d.mean_square = square / kResidualGrid;
  d.residual_sup.assign(max_index + 1, 0.0);
  for (int n = 1; n <= max_index; ++n) {
    double sup = 0.0;
    for (int i = 0; i < kResidualGrid; ++i) {
      const double w = 2.0 * std::numbers::pi * n * i / kResidualGrid;
      sup = std::max(sup, std::abs(grid[i] - d.b0 - d.a[n] * std::sin(w) - d.b[n] * std::cos(w)));
    }
    d.residual_sup[n] = sup;
  }
  return d;
}

FourierDecomposition curvature_decompose(const CurvatureProfile& profile, int max_index) {
  return fourier_decompose(
      [&profile](double s) {
        const double g = profile(s);
        return 0.25 * g * g;
      },
      profile.period(), max_index);
}

std::string to_string(GapVerdict verdict) {
  switch (verdict) {
    case GapVerdict::CriterionHolds:
      return "CriterionHolds";
    case GapVerdict::AmplitudeZero:
      return "AmplitudeZero";
    case GapVerdict::AmplitudeTooLarge:
      return "AmplitudeTooLarge";
    case GapVerdict::ResidualTooLarge:
      return "ResidualTooLarge";
  }
  return "unknown";
}

GapCertificate check_gap_criterion(const FourierDecomposition& decomp, int n) {
  GapCertificate c;
  c.n = n;
  c.amplitude = decomp.amplitude(n);
  c.upper_bound = 12.0 * std::numbers::pi * std::numbers::pi * n * n /
                  (decomp.period * decomp.period);
  c.residual_sup = decomp.residual_sup[n];
  // Coefficients at round-off level are treated as zero.
  const double floor = 1e-13 * (1.0 + std::sqrt(decomp.mean_square));
  if (c.amplitude <= floor) {
    c.verdict = GapVerdict::AmplitudeZero;
  } else if (c.amplitude >= c.upper_bound) {
    c.verdict = GapVerdict::AmplitudeTooLarge;
  } else if (c.residual_sup >= 0.25 * c.amplitude) {
    c.verdict = GapVerdict::ResidualTooLarge;
  } else {
    c.verdict = GapVerdict::CriterionHolds;
  }
  return c;
}

EdgeEigenvalues periodic_antiperiodic_eigenvalues(const std::function<double(double)>& v,
                                                  double period, int count, int n_modes) {
  const auto coeffs = potential_coefficients(v, period, n_modes);
  EdgeEigenvalues e;
  e.periodic = hermitian_lowest(assemble_hill(coeffs, 1.0, 0.0, period, n_modes), count);
  e.antiperiodic =
      hermitian_lowest(assemble_hill(coeffs, 1.0, std::numbers::pi, period, n_modes), count);
  return e;
}

std::vector<MathieuRow> mathieu_gap_check(const std::vector<double>& alphas, double a,
                                          int n_modes) {
  if (!(a > 0.0)) throw DomainError("Mathieu period must be positive");
  const double limit = 6.0 * std::numbers::pi * std::numbers::pi / (a * a);
  std::vector<MathieuRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(std::abs(alpha) < limit)) {
      std::ostringstream os;
      os << "|alpha| = " << std::abs(alpha) << " violates |alpha| < 6 pi^2 / a^2 = " << limit;
      throw DomainError(os.str());
    }
    const auto v = [alpha, a](double x) {
      return 2.0 * alpha * std::cos(2.0 * std::numbers::pi * x / a);
    };
    const auto coeffs = potential_coefficients(v, a, n_modes);
    const auto m = hermitian_lowest(assemble_hill(coeffs, 1.0, std::numbers::pi, a, n_modes), 2);
    MathieuRow row;
    row.alpha = alpha;
    row.gap = m[1] - m[0];
    row.bound = std::abs(alpha);
    row.pass = row.gap >= row.bound - 1e-6;
    rows.push_back(row);
  }
  return rows;
}

double default_gap_tolerance(const FloquetBandTable& table) {
  double lo = table.edge_zero.front();
  double hi = lo;
  for (const auto* col : {&table.edge_zero, &table.edge_pi}) {
    for (double v : *col) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return 1e-8 * (1.0 + (hi - lo));
}

GapReport gap_report(const FloquetBandTable& table, double gap_tolerance) {
  if (table.edge_zero.size() != static_cast<std::size_t>(table.count) ||
      table.edge_pi.size() != static_cast<std::size_t>(table.count)) {
    throw DomainError("band table lacks edge columns at theta = 0 and pi");
  }
  GapReport r;
  r.gap_tolerance = gap_tolerance < 0.0 ? default_gap_tolerance(table) : gap_tolerance;
  r.searched_up_to = table.count - 1;
  const auto& z = table.edge_zero;
  const auto& p = table.edge_pi;
  for (int j = 1; j <= table.count; ++j) {
    const bool odd = j % 2 == 1;
    BandInterval b;
    b.j = j;
    b.lo = odd ? z[j - 1] : p[j - 1];
    b.hi = odd ? p[j - 1] : z[j - 1];
    b.length = b.hi - b.lo;
    r.bands.push_back(b);

    double grid_min = b.lo;
    double grid_max = b.hi;
    for (const auto& row : table.mu) {
      grid_min = std::min(grid_min, row[j - 1]);
      grid_max = std::max(grid_max, row[j - 1]);
    }
    r.edge_grid_discrepancy =
        std::max({r.edge_grid_discrepancy, b.lo - grid_min, grid_max - b.hi});
  }
  for (int j = 1; j < table.count; ++j) {
    const bool odd = j % 2 == 1;
    GapInterval g;
    g.j = j;
    g.length = odd ? p[j] - p[j - 1] : z[j] - z[j - 1];
    r.gaps.push_back(g);
    if (r.first_open_gap == 0 && g.length > r.gap_tolerance) r.first_open_gap = j;
  }
  return r;
}

}  // namespace leaky
