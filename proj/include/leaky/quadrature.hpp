#pragma once

#include <array>

namespace leaky::quadrature {

// 10-point Gauss-Legendre rule on [-1, 1], positive half (symmetric).
inline constexpr std::array<double, 5> kGaussNodes = {
    0.14887433898163122, 0.43339539412924721, 0.67940956829902444, 0.86506336668898454,
    0.97390652851717174};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.29552422471475298, 0.26926671930999652, 0.21908636251598201, 0.14945134915058036,
    0.066671344308688069};

/// 10-point Gauss-Legendre approximation of the integral of f over [lo, hi].
template <class F>
auto gauss_legendre(F&& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto sum = kGaussWeights[0] * (f(mid - half * kGaussNodes[0]) + f(mid + half * kGaussNodes[0]));
  for (std::size_t i = 1; i < kGaussNodes.size(); ++i) {
    sum = sum + kGaussWeights[i] * (f(mid - half * kGaussNodes[i]) + f(mid + half * kGaussNodes[i]));
  }
  return half * sum;
}

}  // namespace leaky::quadrature
