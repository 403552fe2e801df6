#include "doctest.h"

#include <cmath>
#include <numbers>

#include "leaky/curvature.hpp"
#include "leaky/curve_geometry.hpp"
#include "leaky/errors.hpp"
#include "oracles.hpp"

using namespace leaky;
using std::numbers::pi;

TEST_CASE("fourier profile evaluates the series and its derivatives") {
  const auto p = CurvatureProfile::fourier(2.0, {0.1, 0.0}, {0.0, 0.4});
  const double s = 0.37;
  const double w = pi;  // 2 pi / L
  const auto j = p.jet(s);
  CHECK(j.value == doctest::Approx(0.1 * std::cos(w * s) + 0.4 * std::sin(2 * w * s)).epsilon(1e-14));
  CHECK(j.d1 == doctest::Approx(-0.1 * w * std::sin(w * s) + 0.8 * w * std::cos(2 * w * s)).epsilon(1e-13));
  CHECK(j.d2 == doctest::Approx(-0.1 * w * w * std::cos(w * s) - 1.6 * w * w * std::sin(2 * w * s)).epsilon(1e-13));
}

TEST_CASE("shift, scale and amplify act on the argument as documented") {
  const auto p = CurvatureProfile::fourier(1.0, {}, {0.5});
  const auto q = p.shifted(0.1).scaled(2.0).amplified(3.0);
  for (double s : {0.0, 0.13, 0.4}) {
    CHECK(q(s) == doctest::Approx(3.0 * 2.0 * p(2.0 * s + 0.1)).epsilon(1e-13));
  }
  CHECK(q.period() == doctest::Approx(0.5));
}

TEST_CASE("presets reject bad parameters") {
  CHECK_THROWS_AS(CurvatureProfile::preset("nope", {}), DomainError);
  CHECK_THROWS_AS(CurvatureProfile::preset("sech", {{"stretch", -1.0}, {"c", 1.0}}), DomainError);
  CHECK_FALSE(CurvatureProfile::preset("sech", {{"c", 0.8}}).periodic());
  CHECK_THROWS_AS(CurvatureProfile::preset("sech", {{"c", 0.8}}).period(), DomainError);
}

TEST_CASE("constant curvature traces a circle") {
  const double c = 0.7;
  const auto p = CurvatureProfile::preset("constant", {{"c", c}, {"L", 3.0}});
  CurveGeometry g(p);
  for (double s : {0.0, 0.5, 1.3, 2.9, 4.4}) {
    const Vec2 x = g.point(s);
    CHECK(x.x == doctest::Approx(std::sin(c * s) / c).epsilon(1e-12));
    CHECK(x.y == doctest::Approx((std::cos(c * s) - 1.0) / c).epsilon(1e-12));
  }
}

TEST_CASE("period vector agrees with adaptive quadrature of the turning angle") {
  const double A = 0.9;
  const auto p = CurvatureProfile::fourier(1.0, {}, {A});
  // phi(s) = A / (2 pi) (1 - cos 2 pi s)
  const auto phi = [&](double s) { return A / (2 * pi) * (1.0 - std::cos(2 * pi * s)); };
  const double k1 = oracle::simpson([&](double t) { return std::cos(phi(t)); }, 0.0, 1.0, 1e-14);
  const double k2 = oracle::simpson([&](double t) { return -std::sin(phi(t)); }, 0.0, 1.0, 1e-14);
  const PeriodVector pv = period_vector(p);
  CHECK(pv.K1 == doctest::Approx(k1).epsilon(1e-12));
  CHECK(pv.K2 == doctest::Approx(k2).epsilon(1e-12));
  CHECK(pv.a4_pass);

  CurveGeometry g(p);
  const Vec2 inside = g.point(0.3);
  const Vec2 later = g.point(2.3);
  CHECK(later.x - inside.x == doctest::Approx(2.0 * k1).epsilon(1e-12));
  CHECK(later.y - inside.y == doctest::Approx(2.0 * k2).epsilon(1e-12));
}

TEST_CASE("sup norms of a single harmonic") {
  const auto n = sup_norms(CurvatureProfile::fourier(1.0, {}, {0.5}));
  CHECK(n.gamma == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(n.dgamma == doctest::Approx(pi).epsilon(1e-12));
  CHECK(n.d2gamma == doctest::Approx(2 * pi * pi).epsilon(1e-12));
}

TEST_CASE("assumption report for a gentle curve") {
  const auto r = check_assumptions(CurvatureProfile::fourier(1.0, {}, {0.3}), 0.05);
  CHECK(r.all_pass());
  CHECK(r.find("A.1") != nullptr);
  CHECK(r.find("A.5")->pass);
  CHECK(r.jacobian_positive);
}

TEST_CASE("assumption report flags a halfwidth beyond the Jacobian limit") {
  const auto r = check_assumptions(CurvatureProfile::fourier(1.0, {}, {2.0}), 0.6);
  CHECK_FALSE(r.all_pass());
  CHECK_FALSE(r.jacobian_positive);
}

TEST_CASE("nonzero turning over a period fails A.3 for the constant preset") {
  const auto r = check_assumptions(CurvatureProfile::preset("constant", {{"c", 0.2}, {"L", 1.0}}), 0.01);
  CHECK_FALSE(r.find("A.3")->pass);
}

TEST_CASE("decaying profiles reconstruct over an explicit span") {
  const auto p = CurvatureProfile::preset("sech", {{"c", 0.8}});
  std::vector<double> s = {-5.0, 0.0, 5.0};
  const auto out = reconstruct_curve(p, s);
  REQUIRE(out.size() == 3);
  CHECK(out[1].point.x == doctest::Approx(0.0));
  // phi(s) = 0.8 * 2 atan(tanh(s/2))
  CHECK(out[2].phase == doctest::Approx(1.6 * std::atan(std::tanh(2.5))).epsilon(1e-12));
}
