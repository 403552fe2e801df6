#include "leaky/curvature.hpp"

#include <cmath>
#include <numbers>

#include "leaky/errors.hpp"

namespace leaky {
namespace {

// Second-order forward-mode jets for the closed-form presets.
struct Jet {
  double v, d, dd;
};

Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet operator*(double c, Jet a) { return {c * a.v, c * a.d, c * a.dd}; }
Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
// f(g(s)) given f, f', f'' evaluated at g.v
Jet compose(double f, double df, double ddf, Jet g) {
  return {f, df * g.d, ddf * g.d * g.d + df * g.dd};
}
Jet reciprocal(Jet a) {
  const double inv = 1.0 / a.v;
  return compose(inv, -inv * inv, 2.0 * inv * inv * inv, a);
}
Jet sin(Jet a) { return compose(std::sin(a.v), std::cos(a.v), -std::sin(a.v), a); }
Jet cos(Jet a) { return compose(std::cos(a.v), -std::sin(a.v), -std::cos(a.v), a); }
Jet exp(Jet a) {
  const double e = std::exp(a.v);
  return compose(e, e, e, a);
}
Jet sech(Jet a) {
  const double s = 1.0 / std::cosh(a.v);
  const double t = std::tanh(a.v);
  return compose(s, -s * t, s * (t * t - s * s), a);
}
Jet pow(Jet a, double p) {
  const double f = std::pow(a.v, p);
  return compose(f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v), a);
}

double require(const CurvatureProfile::Params& params, const std::string& key,
               const std::string& preset) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw DomainError("preset '" + preset + "' requires parameter '" + key + "'");
  }
  if (!std::isfinite(it->second)) {
    throw DomainError("preset '" + preset + "' parameter '" + key + "' must be finite");
  }
  return it->second;
}

double optional(const CurvatureProfile::Params& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool is_decaying_preset(const std::string& name) {
  return name == "sech" || name == "gaussian" || name == "algebraic";
}

void validate_preset(const std::string& name, const CurvatureProfile::Params& params) {
  const auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw DomainError("preset '" + name + "' has no parameter '" + key + "'");
    }
  };
  if (name == "constant") {
    check_keys({"c", "L"});
    require(params, "c", name);
    if (require(params, "L", name) <= 0.0) throw DomainError("preset 'constant': L must be > 0");
  } else if (name == "damped_sin") {
    check_keys({"c", "r", "L"});
    require(params, "c", name);
    if (std::abs(require(params, "r", name)) >= 1.0) {
      throw DomainError("preset 'damped_sin': |r| must be < 1");
    }
    if (require(params, "L", name) <= 0.0) throw DomainError("preset 'damped_sin': L must be > 0");
  } else if (name == "sech" || name == "gaussian") {
    check_keys({"c", "stretch"});
    require(params, "c", name);
    if (optional(params, "stretch", 1.0) <= 0.0) {
      throw DomainError("preset '" + name + "': stretch must be > 0");
    }
  } else if (name == "algebraic") {
    check_keys({"c", "p", "stretch"});
    require(params, "c", name);
    if (require(params, "p", name) <= 0.0) throw DomainError("preset 'algebraic': p must be > 0");
    if (optional(params, "stretch", 1.0) <= 0.0) {
      throw DomainError("preset 'algebraic': stretch must be > 0");
    }
  } else {
    throw DomainError("unknown curvature preset '" + name + "'");
  }
}

Jet eval_preset(const std::string& name, const CurvatureProfile::Params& p, double s) {
  const Jet x{s, 1.0, 0.0};
  if (name == "constant") return {p.at("c"), 0.0, 0.0};
  if (name == "damped_sin") {
    const double w = 2.0 * std::numbers::pi / p.at("L");
    const Jet phase = w * x;
    const Jet denom = Jet{1.0, 0.0, 0.0} + (-p.at("r")) * cos(phase);
    return p.at("c") * (sin(phase) * reciprocal(denom));
  }
  const double stretch = optional(p, "stretch", 1.0);
  const Jet y = stretch * x;
  if (name == "sech") return p.at("c") * sech(y);
  if (name == "gaussian") return p.at("c") * exp(-1.0 * (y * y));
  // algebraic
  return p.at("c") * pow(Jet{1.0, 0.0, 0.0} + y * y, -0.5 * p.at("p"));
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"constant", "damped_sin", "sech", "gaussian", "algebraic"};
}

CurvatureProfile CurvatureProfile::fourier(double period, std::vector<double> cos_coeffs,
                                           std::vector<double> sin_coeffs) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw DomainError("Fourier curvature profile needs a positive finite period L");
  }
  for (double c : cos_coeffs) {
    if (!std::isfinite(c)) throw DomainError("non-finite cosine coefficient");
  }
  for (double c : sin_coeffs) {
    if (!std::isfinite(c)) throw DomainError("non-finite sine coefficient");
  }
  CurvatureProfile p;
  p.kind_ = ProfileKind::FourierSeries;
  p.period_ = period;
  p.cos_ = std::move(cos_coeffs);
  p.sin_ = std::move(sin_coeffs);
  return p;
}

CurvatureProfile CurvatureProfile::preset(const std::string& name, Params params) {
  validate_preset(name, params);
  CurvatureProfile p;
  p.name_ = name;
  p.params_ = std::move(params);
  if (is_decaying_preset(name)) {
    p.kind_ = ProfileKind::Decaying;
    p.period_ = 0.0;
  } else {
    p.kind_ = ProfileKind::Preset;
    p.period_ = p.params_.at("L");
  }
  return p;
}

double CurvatureProfile::period() const {
  if (!periodic()) throw DomainError("decaying curvature profile has no period");
  return period_;
}

CurvatureJet CurvatureProfile::jet(double s) const {
  const double x = s + shift_;
  if (kind_ == ProfileKind::FourierSeries) {
    const double w = 2.0 * std::numbers::pi / period_;
    CurvatureJet j;
    const std::size_t n = std::max(cos_.size(), sin_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double k = static_cast<double>(i + 1) * w;
      const double c = i < cos_.size() ? cos_[i] : 0.0;
      const double sn = i < sin_.size() ? sin_[i] : 0.0;
      const double ck = std::cos(k * x);
      const double sk = std::sin(k * x);
      j.value += c * ck + sn * sk;
      j.d1 += k * (-c * sk + sn * ck);
      j.d2 += -k * k * (c * ck + sn * sk);
    }
    return j;
  }
  const Jet r = eval_preset(name_, params_, x);
  return {r.v, r.d, r.dd};
}

CurvatureProfile CurvatureProfile::shifted(double s0) const {
  CurvatureProfile p = *this;
  p.shift_ += s0;
  return p;
}

CurvatureProfile CurvatureProfile::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("scaling factor must be positive");
  CurvatureProfile p = *this;
  p.shift_ = shift_ / lambda;
  if (kind_ == ProfileKind::FourierSeries) {
    p.period_ = period_ / lambda;
    for (double& c : p.cos_) c *= lambda;
    for (double& c : p.sin_) c *= lambda;
    return p;
  }
  p.params_["c"] *= lambda;
  if (kind_ == ProfileKind::Preset) {
    p.params_["L"] /= lambda;
    p.period_ = p.params_["L"];
  } else {
    p.params_["stretch"] = optional(params_, "stretch", 1.0) * lambda;
  }
  return p;
}

CurvatureProfile CurvatureProfile::amplified(double factor) const {
  CurvatureProfile p = *this;
  if (kind_ == ProfileKind::FourierSeries) {
    for (double& c : p.cos_) c *= factor;
    for (double& c : p.sin_) c *= factor;
  } else {
    p.params_["c"] *= factor;
  }
  return p;
}

bool CurvatureProfile::identically_zero() const {
  if (kind_ == ProfileKind::FourierSeries) {
    for (double c : cos_) {
      if (c != 0.0) return false;
    }
    for (double c : sin_) {
      if (c != 0.0) return false;
    }
    return true;
  }
  return params_.at("c") == 0.0;
}

}  // namespace leaky
