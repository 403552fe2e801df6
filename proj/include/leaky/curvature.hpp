#pragma once

#include <map>
#include <string>
#include <vector>

namespace leaky {

enum class ProfileKind { FourierSeries, Preset, Decaying };

/// Value and first two derivatives of the curvature at one point.
struct CurvatureJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Signed curvature gamma(s) of an arc-length parametrized planar curve.
///
/// Three flavours:
///   - FourierSeries: gamma(s) = sum_k c_k cos(2 pi k s / L) + s_k sin(2 pi k s / L),
///     k >= 1. There is no constant term, so the zero-mean condition holds by
///     construction.
///   - Preset: a named closed-form periodic profile ("constant", "damped_sin").
///   - Decaying: a named closed-form profile on the whole line ("sech",
///     "gaussian", "algebraic").
///
/// Every profile may be re-based by a shift s0, gamma_new(s) = gamma(s + s0).
/// The choice of the initial point matters for the strip and tube assumptions,
/// so shifting is the supported way to move it.
class CurvatureProfile {
 public:
  using Params = std::map<std::string, double>;

  CurvatureProfile() = default;

  /// cos_coeffs[k-1] and sin_coeffs[k-1] multiply cos/sin(2 pi k s / L).
  static CurvatureProfile fourier(double period, std::vector<double> cos_coeffs,
                                  std::vector<double> sin_coeffs);
  /// Named closed-form profile. Throws DomainError for unknown names or
  /// missing/invalid parameters.
  static CurvatureProfile preset(const std::string& name, Params params);
  static CurvatureProfile straight(double period) { return fourier(period, {}, {}); }

  ProfileKind kind() const { return kind_; }
  bool periodic() const { return kind_ != ProfileKind::Decaying; }
  /// Arc-length period; throws DomainError for decaying profiles.
  double period() const;

  double operator()(double s) const { return jet(s).value; }
  CurvatureJet jet(double s) const;

  /// gamma(s + s0).
  CurvatureProfile shifted(double s0) const;
  /// lambda * gamma(lambda * s); the period becomes L / lambda.
  CurvatureProfile scaled(double lambda) const;
  /// factor * gamma(s).
  CurvatureProfile amplified(double factor) const;

  /// True when gamma vanishes identically (all coefficients / amplitude zero).
  bool identically_zero() const;

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  const std::string& name() const { return name_; }
  const Params& params() const { return params_; }
  double shift() const { return shift_; }

  bool operator==(const CurvatureProfile&) const = default;

 private:
  ProfileKind kind_ = ProfileKind::FourierSeries;
  double period_ = 1.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::string name_;
  Params params_;
  double shift_ = 0.0;
};

/// Names accepted by CurvatureProfile::preset.
std::vector<std::string> preset_names();

}  // namespace leaky
