#include "leaky/hill_floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/FFT>

#include "leaky/curve_geometry.hpp"
#include "leaky/errors.hpp"

namespace leaky {

std::vector<std::complex<double>> potential_coefficients(const std::function<double(double)>& v,
                                                         double period, int n_modes) {
  if (n_modes < 1) throw DomainError("n_modes must be >= 1");
  if (!(period > 0.0)) throw DomainError("period must be positive");
  const int samples = 4 * n_modes;
  std::vector<double> values(samples);
  for (int j = 0; j < samples; ++j) {
    values[j] = v(period * j / samples);
    if (!std::isfinite(values[j])) {
      throw NumericalError("potential is not finite at s = " + std::to_string(period * j / samples));
    }
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, values);
  const int top = 2 * n_modes;
  std::vector<std::complex<double>> coeffs(2 * top + 1);
  double peak = 0.0;
  for (int m = -top; m <= top; ++m) {
    const int idx = ((m % samples) + samples) % samples;
    coeffs[m + top] = spectrum[idx] / static_cast<double>(samples);
    if (m != 0) peak = std::max(peak, std::abs(coeffs[m + top]));
  }
  double tail = 0.0;
  for (int m = (3 * top) / 4 + 1; m <= top; ++m) tail = std::max(tail, std::abs(coeffs[m + top]));
  if (peak > 0.0 && tail > 1e-6 * peak + 1e-13 * (1.0 + std::abs(coeffs[top]))) {
    std::ostringstream os;
    os << "potential Fourier coefficients have not decayed at |m| ~ " << top << " (tail "
       << tail << " vs peak " << peak << "); input is not smooth enough for n_modes = "
       << n_modes;
    throw NumericalError(os.str());
  }
  return coeffs;
}

Eigen::MatrixXcd assemble_hill(const std::vector<std::complex<double>>& coefficients,
                               double kinetic_prefactor, double theta, double period,
                               int n_modes) {
  if (!(kinetic_prefactor > 0.0)) throw DomainError("kinetic prefactor must be positive");
  const int top = 2 * n_modes;
  if (static_cast<int>(coefficients.size()) != 2 * top + 1) {
    throw DomainError("coefficient vector does not match n_modes");
  }
  const int size = 2 * n_modes + 1;
  Eigen::MatrixXcd h(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) h(r, c) = coefficients[(r - c) + top];
  }
  for (int r = 0; r < size; ++r) {
    const double k = (2.0 * std::numbers::pi * (r - n_modes) + theta) / period;
    h(r, r) += kinetic_prefactor * k * k;
  }
  return h;
}

Eigen::MatrixXcd assemble_hill(const HillOperatorSpec& spec, int n_modes) {
  return assemble_hill(potential_coefficients(spec.potential, spec.period, n_modes),
                       spec.kinetic_prefactor, spec.theta, spec.period, n_modes);
}

std::vector<double> hermitian_lowest(const Eigen::MatrixXcd& matrix, int count) {
  if (count < 0 || count > matrix.rows()) {
    throw DomainError("requested " + std::to_string(count) + " eigenvalues of a " +
                      std::to_string(matrix.rows()) + "x" + std::to_string(matrix.rows()) +
                      " matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigensolver did not converge (size " << matrix.rows() << ", norm "
       << matrix.norm() << ")";
    throw NumericalError(os.str());
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + count};
}

std::vector<double> floquet_eigenvalues(const HillOperatorSpec& spec, int n_modes, int count) {
  return hermitian_lowest(assemble_hill(spec, n_modes), count);
}

HillOperatorSpec comparison_hill(const CurvatureProfile& profile, double theta) {
  HillOperatorSpec spec;
  spec.potential = [profile](double s) {
    const double g = profile(s);
    return -0.25 * g * g;
  };
  spec.kinetic_prefactor = 1.0;
  spec.theta = theta;
  spec.period = profile.period();
  return spec;
}

double ComparisonPotentials::plus(double gamma) const {
  const double lo = 1.0 - a * gamma_plus;
  const double hi = 1.0 + a * gamma_plus;
  return 0.5 * a * d2gamma_plus / (lo * lo * lo) -
         1.25 * a * a * dgamma_plus * dgamma_plus / (hi * hi * hi * hi) -
         0.25 * gamma * gamma / (hi * hi);
}

double ComparisonPotentials::minus(double gamma) const {
  const double lo = 1.0 - a * gamma_plus;
  return -0.5 * a * d2gamma_plus / (lo * lo * lo) -
         1.25 * a * a * dgamma_plus * dgamma_plus / (lo * lo * lo * lo) -
         0.25 * gamma * gamma / (lo * lo);
}

double ComparisonPotentials::plus_prefactor() const {
  const double lo = 1.0 - a * gamma_plus;
  return 1.0 / (lo * lo);
}

double ComparisonPotentials::minus_prefactor() const {
  const double hi = 1.0 + a * gamma_plus;
  return 1.0 / (hi * hi);
}

ComparisonPotentials comparison_potentials(const CurvatureProfile& profile, double a) {
  const SupNorms norms = sup_norms(profile);
  if (!(a > 0.0) || 2.0 * a * norms.gamma >= 1.0) {
    std::ostringstream os;
    os << "halfwidth a = " << a << " violates 0 < a < 1/(2 gamma_+) with gamma_+ = " << norms.gamma;
    throw DomainError(os.str());
  }
  return {a, norms.gamma, norms.dgamma, norms.d2gamma};
}

ComparisonPair comparison_operators(const CurvatureProfile& profile, double a, double theta) {
  const ComparisonPotentials pots = comparison_potentials(profile, a);
  ComparisonPair pair;
  pair.plus.potential = [profile, pots](double s) { return pots.plus(profile(s)); };
  pair.plus.kinetic_prefactor = pots.plus_prefactor();
  pair.minus.potential = [profile, pots](double s) { return pots.minus(profile(s)); };
  pair.minus.kinetic_prefactor = pots.minus_prefactor();
  for (HillOperatorSpec* spec : {&pair.plus, &pair.minus}) {
    spec->theta = theta;
    spec->period = profile.period();
  }
  return pair;
}

double FloquetBandTable::symmetry_defect() const {
  const std::size_t n = theta.size();
  double defect = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (int j = 0; j < count; ++j) defect = std::max(defect, std::abs(mu[i][j] - mu[n - i][j]));
  }
  return defect;
}

double table_tolerance(const FloquetBandTable& table) {
  double scale = 0.0;
  for (const auto& row : table.mu) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  for (double v : table.edge_pi) scale = std::max(scale, std::abs(v));
  return 1e-9 * (1.0 + scale);
}

FloquetBandTable band_table(const HillOperatorSpec& spec, const BandTableOptions& options) {
  if (options.theta_count < 2) throw DomainError("theta_count must be >= 2");
  if (options.count < 1 || options.count > 2 * options.n_modes + 1) {
    throw DomainError("band count must lie in [1, 2 n_modes + 1]");
  }
  const auto coeffs = potential_coefficients(spec.potential, spec.period, options.n_modes);
  const auto column = [&](double theta) {
    return hermitian_lowest(
        assemble_hill(coeffs, spec.kinetic_prefactor, theta, spec.period, options.n_modes),
        options.count);
  };

  FloquetBandTable table;
  table.count = options.count;
  const int n = options.theta_count;
  table.theta.resize(n);
  table.mu.resize(n);
  for (int i = 0; i < n; ++i) table.theta[i] = 2.0 * std::numbers::pi * i / n;

  // Columns are independent; each worker owns a strided subset of rows.
  const int jobs = std::clamp(options.jobs, 1, n);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) table.mu[i] = column(table.theta[i]);
  } else {
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (int i = w; i < n; i += jobs) table.mu[i] = column(table.theta[i]);
      });
    }
  }
  table.edge_zero = table.mu[0];
  table.edge_pi = column(std::numbers::pi);

  const double tol = table_tolerance(table);
  if (const double defect = table.symmetry_defect(); defect > tol) {
    std::ostringstream os;
    os << "band table violates mu(theta) = mu(2 pi - theta) by " << defect << " (tolerance " << tol
       << ")";
    throw NumericalError(os.str());
  }
  // mu_1(0) <= mu_1(pi) <= mu_2(pi) <= mu_2(0) <= mu_3(0) <= mu_3(pi) <= ...
  std::vector<double> chain;
  for (int j = 0; j < table.count; ++j) {
    const bool odd = (j % 2) == 0;  // j-th band with 1-based index j+1
    chain.push_back(odd ? table.edge_zero[j] : table.edge_pi[j]);
    chain.push_back(odd ? table.edge_pi[j] : table.edge_zero[j]);
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (chain[i] < chain[i - 1] - tol) {
      std::ostringstream os;
      os << "band edges violate interlacing at position " << i << " (" << chain[i - 1] << " > "
         << chain[i] << "); increase n_modes";
      throw NumericalError(os.str());
    }
  }
  return table;
}

FloquetBandTable band_table(const CurvatureProfile& profile, const BandTableOptions& options) {
  return band_table(comparison_hill(profile, 0.0), options);
}

}  // namespace leaky
