#include "doctest.h"

#include <cmath>
#include <numbers>

#include "leaky/curvature.hpp"
#include "leaky/errors.hpp"
#include "leaky/gap_analysis.hpp"
#include "leaky/hill_floquet.hpp"
#include "oracles.hpp"

using namespace leaky;
using std::numbers::pi;

TEST_CASE("decomposition of a known trigonometric polynomial") {
  const auto v = [](double x) { return 0.3 + 0.2 * std::sin(2 * pi * x / 2.0) - 0.1 * std::cos(6 * pi * x / 2.0); };
  const auto d = fourier_decompose(v, 2.0, 5);
  CHECK(d.b0 == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(d.a[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d.b[3] == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(std::abs(d.a[2]) < 1e-15);
  CHECK(d.residual_sup[1] == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(d.parseval_defect() < 1e-14);
  const double ms = oracle::simpson([&](double x) { return v(x) * v(x); }, 0.0, 2.0, 1e-14) / 2.0;
  CHECK(d.mean_square == doctest::Approx(ms).epsilon(1e-12));
}

TEST_CASE("gamma^2/4 of a pure sine has only the second harmonic") {
  const auto d = curvature_decompose(CurvatureProfile::fourier(1.0, {}, {0.5}), 4);
  CHECK(d.b0 == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(d.amplitude(2) == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(d.amplitude(1) < 1e-15);

  const auto c2 = check_gap_criterion(d, 2);
  CHECK(c2.verdict == GapVerdict::CriterionHolds);
  CHECK(c2.upper_bound == doctest::Approx(12 * pi * pi * 4).epsilon(1e-14));
  CHECK(c2.residual_sup < 1e-12);
  CHECK(check_gap_criterion(d, 1).verdict == GapVerdict::AmplitudeZero);
}

TEST_CASE("two comparable harmonics leave too large a residual") {
  const int n = 2;
  const auto v = [](double x) { return std::cos(2 * pi * n * x) + std::cos(4 * pi * n * x); };
  const auto c = check_gap_criterion(fourier_decompose(v, 1.0, 8), n);
  CHECK(c.verdict == GapVerdict::ResidualTooLarge);
  CHECK(c.residual_sup == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("amplitude above the bound") {
  const auto v = [](double x) { return 200.0 * std::cos(2 * pi * x); };
  CHECK(check_gap_criterion(fourier_decompose(v, 1.0, 4), 1).verdict == GapVerdict::AmplitudeTooLarge);
}

TEST_CASE("verdict names") {
  CHECK(to_string(GapVerdict::CriterionHolds) == "CriterionHolds");
  CHECK(to_string(GapVerdict::ResidualTooLarge) == "ResidualTooLarge");
}

TEST_CASE("periodic and antiperiodic eigenvalues match finite differences") {
  const auto v = [](double x) { return 3.0 * std::cos(2 * pi * x) + std::sin(4 * pi * x); };
  const auto e = periodic_antiperiodic_eigenvalues(v, 1.0, 4);
  const auto p = oracle::fd_hill_extrapolated(v, 1.0, 0.0, 800, 4);
  const auto ap = oracle::fd_hill_extrapolated(v, 1.0, pi, 800, 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(e.periodic[j] == doctest::Approx(p[j]).epsilon(1e-7));
    CHECK(e.antiperiodic[j] == doctest::Approx(ap[j]).epsilon(1e-7));
  }
}

TEST_CASE("pure sine curvature opens the second gap first") {
  const auto p = CurvatureProfile::fourier(1.0, {}, {0.5});
  const auto r = gap_report(band_table(p, {33, 8, 128, 1}));
  CHECK(r.first_open_gap == 2);
  CHECK(r.edge_grid_discrepancy < 1e-7);

  // independent G_2 = mu_3(0) - mu_2(0) from finite differences
  const auto v = [&](double s) { return -0.25 * p(s) * p(s); };
  const auto ref = oracle::fd_hill_extrapolated(v, 1.0, 0.0, 800, 3);
  CHECK(r.gaps[1].length == doctest::Approx(ref[2] - ref[1]).epsilon(1e-6));
  CHECK(r.gaps[0].length < r.gap_tolerance);
}

TEST_CASE("band and gap lengths tile the range") {
  const auto p = CurvatureProfile::fourier(1.0, {0.2}, {0.4});
  const auto r = gap_report(band_table(p, {17, 6, 64, 1}));
  REQUIRE(r.bands.size() == 6);
  REQUIRE(r.gaps.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(r.bands[j].hi + r.gaps[j].length == doctest::Approx(r.bands[j + 1].lo).epsilon(1e-12));
    CHECK(r.gaps[j].length >= -1e-9);
  }
  CHECK(r.found());
}

TEST_CASE("Mathieu gap bound on a small grid") {
  const auto rows = mathieu_gap_check({-3.0, -0.5, 0.5, 3.0}, pi, 64);
  for (const auto& row : rows) {
    CHECK(row.pass);
    CHECK(row.gap >= std::abs(row.alpha) - 1e-6);
  }
  CHECK_THROWS_AS(mathieu_gap_check({6.0}, pi), DomainError);
}
