#pragma once

#include <string>

#include "leaky/tridiagonal.hpp"

namespace leaky {

/// Transverse delta-well operators on (-a, a):
///
///   DirichletPlus:  t+(f) = int |f'|^2 - beta |f(0)|^2,  f(+-a) = 0.
///   RobinMinus:     t-(f) = int |f'|^2 - beta |f(0)|^2 - gamma_+ (|f(a)|^2 + |f(-a)|^2),
///                   natural condition f'(+-a) . outward = gamma_+ f(+-a).
///
/// The even ground state is sinh(k (a - |u|)) for DirichletPlus and
/// cosh(k (a - |u|)) - (gamma_+ / k) sinh(k (a - |u|)) for RobinMinus, with
/// zeta = -k^2 fixed by the jump f'(0+) - f'(0-) = -beta f(0):
///
///   DirichletPlus:  beta = 2 k coth(k a)
///   RobinMinus:     2 k tanh(k a) - 2 gamma_+ - beta + beta gamma_+ tanh(k a) / k = 0
enum class TransverseVariant { DirichletPlus, RobinMinus };

std::string to_string(TransverseVariant variant);

struct TransverseSpec {
  double a = 1.0;
  double beta = 1.0;
  double gamma_plus = 0.0;
  TransverseVariant variant = TransverseVariant::DirichletPlus;
};

struct TransverseMode {
  double zeta = 0.0;
  double k = 0.0;
  double excess = 0.0;  // zeta + beta^2 / 4, computed without cancellation
  double bound_lo = 0.0;
  double bound_hi = 0.0;
  bool hypotheses_hold = false;  // beta a > 8/3, or beta a > 8 and beta > 8/3 gamma_+
  bool within_bounds = false;
};

/// Throws DomainError for invalid specs and NumericalError when the secular
/// equation has no root (e.g. DirichletPlus with beta a <= 2: no bound state).
TransverseMode solve_transverse(const TransverseSpec& spec);

/// Form discretization on n_points uniform cells (n_points even): stiffness
/// 1/h stencil, lumped mass, delta as -beta on the centre node, Robin term
/// -gamma_+ on the end nodes, Dirichlet end nodes removed.
TridiagonalPencil transverse_pencil(const TransverseSpec& spec, int n_points);

/// Negative eigenvalues of the discretized form (Sturm count at 0).
int count_negative_modes(const TransverseSpec& spec, int n_points = 8192);

/// Lowest eigenvalue of the discretized form, Richardson-extrapolated over
/// n_points and 2 n_points.
double fd_transverse_eigenvalue(const TransverseSpec& spec, int n_points = 8192);

}  // namespace leaky
