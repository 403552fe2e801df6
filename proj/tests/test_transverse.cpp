#include "doctest.h"

#include <cmath>

#include "leaky/errors.hpp"
#include "leaky/transverse_delta.hpp"
#include "leaky/tridiagonal.hpp"
#include "oracles.hpp"

using namespace leaky;

namespace {

// beta = 2 k coth(k a)
double dirichlet_k(double a, double beta) {
  return oracle::bisect([&](double k) { return 2 * k / std::tanh(k * a) - beta; }, 1e-12, beta);
}

// cosh(k(a-|u|)) - (g/k) sinh(k(a-|u|)) jump condition, in tanh form
double robin_k(double a, double beta, double g) {
  const auto f = [&](double k) {
    const double t = std::tanh(k * a);
    return 2 * k * t - 2 * g - beta + beta * g * t / k;
  };
  return oracle::bisect(f, beta / 2, 4 * beta + 4 * g);
}

}  // namespace

TEST_CASE("tridiagonal pencil reproduces the discrete Laplacian spectrum") {
  const int n = 50;
  TridiagonalPencil p;
  p.diag.assign(n, 2.0);
  p.off.assign(n - 1, -1.0);
  p.mass.assign(n, 1.0);
  for (int k : {0, 1, 10, 49}) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1));
    CHECK(p.eigenvalue(k) == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(p.count_below(0.0) == 0);
  CHECK(p.count_below(4.0) == n);
}

TEST_CASE("DirichletPlus matches the secular equation") {
  for (double a : {0.3, 1.0}) {
    for (double beta : {8.0, 20.0}) {
      if (beta * a <= 2) continue;
      const auto m = solve_transverse({a, beta, 0.0, TransverseVariant::DirichletPlus});
      const double k = dirichlet_k(a, beta);
      CHECK(m.zeta == doctest::Approx(-k * k).epsilon(1e-12));
      CHECK(m.excess == doctest::Approx(beta * beta / 4 - k * k).epsilon(1e-6));
    }
  }
}

TEST_CASE("excess survives cancellation at large beta a") {
  const double a = 1.0;
  const double beta = 60.0;
  const auto m = solve_transverse({a, beta, 0.0, TransverseVariant::DirichletPlus});
  // beta/2 - k ~ beta e^{-beta a}
  const double expected = beta * beta * std::exp(-beta * a);
  CHECK(m.excess == doctest::Approx(expected).epsilon(1e-6));
  CHECK(m.excess > 0.0);
}

TEST_CASE("RobinMinus matches the secular equation") {
  for (double g : {0.5, 1.0}) {
    const double a = 0.4;
    const double beta = 25.0;
    const auto m = solve_transverse({a, beta, g, TransverseVariant::RobinMinus});
    const double k = robin_k(a, beta, g);
    CHECK(m.zeta == doctest::Approx(-k * k).epsilon(1e-12));
    CHECK(m.zeta < -beta * beta / 4);
    CHECK(m.within_bounds);
  }
}

TEST_CASE("finite differences agree with the analytic eigenvalue") {
  const TransverseSpec plus{0.5, 12.0, 0.0, TransverseVariant::DirichletPlus};
  const TransverseSpec minus{0.5, 12.0, 0.8, TransverseVariant::RobinMinus};
  CHECK(fd_transverse_eigenvalue(plus) == doctest::Approx(solve_transverse(plus).zeta).epsilon(1e-6));
  CHECK(fd_transverse_eigenvalue(minus) == doctest::Approx(solve_transverse(minus).zeta).epsilon(1e-6));
}

TEST_CASE("weak delta in a Dirichlet box has no bound state") {
  const TransverseSpec weak{1.0, 0.01, 0.0, TransverseVariant::DirichletPlus};
  CHECK(count_negative_modes(weak) == 0);
  CHECK_THROWS_AS(solve_transverse(weak), NumericalError);
  CHECK(count_negative_modes({1.0, 2.5, 0.0, TransverseVariant::DirichletPlus}) == 1);
}

TEST_CASE("Robin boundary binds an odd mode once gamma_+ a exceeds 1") {
  CHECK(count_negative_modes({0.5, 40.0, 1.0, TransverseVariant::RobinMinus}) == 1);
  // both edge-localized Robin modes drop below zero, next to the delta mode
  CHECK(count_negative_modes({1.2, 10.0, 1.0, TransverseVariant::RobinMinus}) > 1);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(solve_transverse({-1.0, 5.0, 0.0, TransverseVariant::DirichletPlus}), DomainError);
  CHECK_THROWS_AS(solve_transverse({1.0, -5.0, 0.0, TransverseVariant::DirichletPlus}), DomainError);
  CHECK_THROWS_AS(transverse_pencil({1.0, 5.0, 0.0, TransverseVariant::DirichletPlus}, 7), DomainError);
}
