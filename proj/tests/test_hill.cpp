#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "leaky/curvature.hpp"
#include "leaky/errors.hpp"
#include "leaky/hill_floquet.hpp"
#include "oracles.hpp"

using namespace leaky;
using std::numbers::pi;

TEST_CASE("potential coefficients of a trigonometric polynomial") {
  const auto c = potential_coefficients([](double s) { return 1.0 + 0.5 * std::cos(4 * pi * s); }, 1.0, 16);
  REQUIRE(c.size() == 65);
  const int mid = 32;
  CHECK(c[mid].real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c[mid + 2].real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c[mid - 2].real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(c[mid + 1]) < 1e-15);
}

TEST_CASE("undecayed potential spectrum is refused") {
  const auto rough = [](double s) { return std::abs(s - 0.5); };
  CHECK_THROWS_AS(potential_coefficients(rough, 1.0, 8), NumericalError);
}

TEST_CASE("free operator gives shifted squares") {
  HillOperatorSpec spec{[](double) { return 0.0; }, 1.0, pi / 3, 2 * pi};
  const auto mu = floquet_eigenvalues(spec, 32, 6);
  std::vector<double> exact;
  for (int k = -5; k <= 5; ++k) exact.push_back(std::pow((2 * pi * k + pi / 3) / (2 * pi), 2));
  std::sort(exact.begin(), exact.end());
  for (int j = 0; j < 6; ++j) CHECK(mu[j] == doctest::Approx(exact[j]).epsilon(1e-13));
}

TEST_CASE("Mathieu characteristic values at q = 1") {
  // -y'' + 2 cos(2x) y on period pi; tabulated a_0, b_1, a_1, b_2, a_2.
  const double q = 1.0;
  const auto v = [q](double x) { return 2.0 * q * std::cos(2.0 * x); };
  const auto even = floquet_eigenvalues({v, 1.0, 0.0, pi}, 64, 3);
  const auto odd = floquet_eigenvalues({v, 1.0, pi, pi}, 64, 2);
  CHECK(even[0] == doctest::Approx(-0.4551386041).epsilon(1e-9));
  CHECK(odd[0] == doctest::Approx(-0.1102488170).epsilon(1e-9));
  CHECK(odd[1] == doctest::Approx(1.8591080725).epsilon(1e-9));
  CHECK(even[1] == doctest::Approx(3.9170247729).epsilon(1e-9));
  CHECK(even[2] == doctest::Approx(4.3713009827).epsilon(1e-9));
}

TEST_CASE("Galerkin eigenvalues match extrapolated finite differences") {
  const auto p = CurvatureProfile::fourier(1.0, {0.2}, {0.5, 0.0, 0.3});
  const auto v = [&](double s) { return -0.25 * p(s) * p(s); };
  for (double theta : {0.0, 1.0, pi}) {
    const auto mu = floquet_eigenvalues(comparison_hill(p, theta), 64, 4);
    const auto ref = oracle::fd_hill_extrapolated(v, 1.0, theta, 800, 4);
    for (int j = 0; j < 4; ++j) CHECK(mu[j] == doctest::Approx(ref[j]).epsilon(1e-7));
  }
}

TEST_CASE("band table symmetry and edge interlacing") {
  const auto p = CurvatureProfile::fourier(1.0, {0.1}, {0.5});
  const auto t = band_table(p, {17, 6, 64, 1});
  REQUIRE(t.mu.size() == 17);
  CHECK(t.symmetry_defect() < table_tolerance(t));
  // mu_1(0) <= mu_1(pi) <= mu_2(pi) <= mu_2(0) <= mu_3(0) <= ...
  std::vector<double> chain;
  for (int j = 0; j < 6; ++j) {
    if (j % 2 == 0) chain.insert(chain.end(), {t.edge_zero[j], t.edge_pi[j]});
    else chain.insert(chain.end(), {t.edge_pi[j], t.edge_zero[j]});
  }
  for (std::size_t i = 1; i < chain.size(); ++i) CHECK(chain[i - 1] <= chain[i] + 1e-9);
  for (std::size_t i = 0; i < t.mu.size(); ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(t.mu[i][j] >= std::min(t.edge_zero[j], t.edge_pi[j]) - 1e-8);
      CHECK(t.mu[i][j] <= std::max(t.edge_zero[j], t.edge_pi[j]) + 1e-8);
    }
  }
}

TEST_CASE("band table is independent of the worker count") {
  const auto p = CurvatureProfile::fourier(1.0, {}, {0.5, 0.2});
  const auto a = band_table(p, {33, 5, 64, 1});
  const auto b = band_table(p, {33, 5, 64, 3});
  CHECK(a.mu == b.mu);
  CHECK(a.edge_pi == b.edge_pi);
}

TEST_CASE("comparison potentials follow the closed form") {
  const auto p = CurvatureProfile::fourier(1.0, {}, {0.5});
  const double a = 0.01;
  const auto c = comparison_potentials(p, a);
  CHECK(c.gamma_plus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.plus_prefactor() == doctest::Approx(1.0 / std::pow(1.0 - 0.005, 2)).epsilon(1e-14));
  CHECK(c.minus_prefactor() == doctest::Approx(1.0 / std::pow(1.0 + 0.005, 2)).epsilon(1e-14));
  CHECK(c.plus(0.3) >= -0.25 * 0.09 - 1e-2);
  CHECK(c.minus(0.3) <= c.plus(0.3));
  CHECK_THROWS_AS(comparison_potentials(p, 1.0), DomainError);
  CHECK_THROWS_AS(comparison_potentials(p, 0.0), DomainError);
}

TEST_CASE("comparison eigenvalues converge to the Hill eigenvalues as a shrinks") {
  const auto p = CurvatureProfile::fourier(1.0, {}, {0.5});
  const auto mu = floquet_eigenvalues(comparison_hill(p, 0.0), 64, 3);
  double prev = 1e300;
  for (double a : {0.02, 0.01, 0.005}) {
    const auto pair = comparison_operators(p, a, 0.0);
    const auto plus = floquet_eigenvalues(pair.plus, 64, 3);
    const auto minus = floquet_eigenvalues(pair.minus, 64, 3);
    double err = 0.0;
    for (int j = 0; j < 3; ++j) {
      CHECK(minus[j] <= mu[j] + 1e-10);
      CHECK(mu[j] <= plus[j] + 1e-10);
      err = std::max(err, plus[j] - minus[j]);
    }
    CHECK(err < prev);
    prev = err;
  }
}
