// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leaky/band_assembly.hpp"
#include "leaky/curvature.hpp"
#include "leaky/fiber2d.hpp"
#include "leaky/gap_analysis.hpp"
#include "leaky/hill_floquet.hpp"
#include "leaky/straight_line.hpp"
#include "leaky/transverse_delta.hpp"
#include "oracles.hpp"

using namespace leaky;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const CurvatureProfile& sine(double amp) {
  static const CurvatureProfile p5 = CurvatureProfile::fourier(1.0, {}, {0.5});
  static const CurvatureProfile p3 = CurvatureProfile::fourier(1.0, {}, {0.3});
  return amp == 0.5 ? p5 : p3;
}

Outcome free_spectrum() {
  const double L = 2 * pi;
  double worst = 0.0;
  for (double theta : {0.0, pi / 3, pi}) {
    const auto mu = floquet_eigenvalues(comparison_hill(CurvatureProfile::straight(L), theta), 64, 8);
    std::vector<double> exact;
    for (int k = -8; k <= 8; ++k) exact.push_back(std::pow((2 * pi * k + theta) / L, 2));
    std::sort(exact.begin(), exact.end());
    for (int j = 0; j < 8; ++j) worst = std::max(worst, std::abs(mu[j] - exact[j]));
  }
  return {worst <= 1e-10, "max |mu - exact| = " + fmt(worst)};
}

Outcome plus_bounds() {
  int bad_bound = 0, bad_count = 0, total = 0;
  for (double ba : {3.0, 5.0, 10.0, 20.0}) {
    for (double beta : {4.0, 8.0, 16.0}) {
      const TransverseSpec spec{ba / beta, beta, 0.0, TransverseVariant::DirichletPlus};
      const auto m = solve_transverse(spec);
      const double floor = -beta * beta / 4;
      const double cap = 2 * beta * beta * std::exp(-ba / 2);
      ++total;
      if (!(m.zeta > floor && m.zeta < floor + cap && m.excess > 0 && m.excess < cap)) ++bad_bound;
      if (count_negative_modes(spec) != 1) ++bad_count;
    }
  }
  return {bad_bound == 0 && bad_count == 0,
          std::to_string(total) + " cases, bound violations " + std::to_string(bad_bound) +
              ", Sturm count != 1: " + std::to_string(bad_count)};
}

Outcome minus_bounds() {
  int bad_bound = 0, total = 0, explained = 0;
  std::vector<std::string> multi;
  for (double ba : {9.0, 12.0, 20.0}) {
    for (double beta : {4.0, 8.0, 16.0}) {
      for (double g : {0.5, 1.0}) {
        if (!(beta > 8.0 / 3.0 * g)) continue;
        const TransverseSpec spec{ba / beta, beta, g, TransverseVariant::RobinMinus};
        const auto m = solve_transverse(spec);
        const double ceil = -beta * beta / 4;
        const double drop = 2205.0 / 16.0 * beta * beta * std::exp(-ba / 2);
        ++total;
        if (!(m.zeta > ceil - drop && m.zeta < ceil && m.excess < 0)) ++bad_bound;
        const int n = count_negative_modes(spec);
        if (n != 1) {
          if (g * spec.a > 1.0) ++explained;
          multi.push_back("(beta=" + fmt(beta) + ", a=" + fmt(spec.a) + ", g=" + fmt(g) + "): " +
                          std::to_string(n));
        }
      }
    }
  }
  std::string detail = std::to_string(total) + " cases, bound violations " + std::to_string(bad_bound) +
                       ", non-unique " + std::to_string(multi.size());
  if (!multi.empty()) {
    detail += " (" + std::to_string(explained) + " of them with gamma_+ a > 1; first " + multi.front() + ")";
  }
  return {bad_bound == 0 && multi.empty(), detail};
}

Outcome mathieu() {
  std::vector<double> alphas;
  for (int k = 1; k <= 12; ++k) alphas.push_back(-5.8 * k / 12.0);
  for (int k = 1; k <= 13; ++k) alphas.push_back(5.8 * k / 13.0);
  const auto rows = mathieu_gap_check(alphas, pi, 128);
  double margin = 1e300;
  bool ok = rows.size() == 25;
  for (const auto& r : rows) {
    ok = ok && r.gap >= std::abs(r.alpha) - 1e-6;
    margin = std::min(margin, r.gap - std::abs(r.alpha));
  }
  return {ok, "25 alphas in [-5.8, 5.8], min (gap - |alpha|) = " + fmt(margin)};
}

struct CorpusEntry {
  CurvatureProfile profile;
  std::vector<int> certified;
};

// Random one- and two-harmonic curvatures with at least one certified gap index.
const std::vector<CorpusEntry>& gap_corpus(int& drawn) {
  static int draws = 0;
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> out;
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> harmonic(1, 5);
    while (out.size() < 50 && draws < 5000) {
      ++draws;
      const double L = 0.5 + 1.5 * unit(rng);
      const bool two = unit(rng) < 0.5;
      const int k1 = harmonic(rng);
      std::vector<double> cs(6, 0.0), sn(6, 0.0);
      const double amp = 0.1 + 2.0 * unit(rng);
      (unit(rng) < 0.5 ? sn : cs)[k1 - 1] = amp;
      if (two) {
        const int k2 = harmonic(rng);
        (unit(rng) < 0.5 ? sn : cs)[k2 - 1] += amp * (0.05 + 0.5 * unit(rng));
      }
      const auto p = CurvatureProfile::fourier(L, cs, sn);
      const auto d = curvature_decompose(p, 12);
      std::vector<int> certified;
      for (int n = 1; n <= 12; ++n) {
        if (check_gap_criterion(d, n).verdict == GapVerdict::CriterionHolds) certified.push_back(n);
      }
      if (!certified.empty()) out.push_back({p, certified});
    }
    return out;
  }();
  drawn = draws;
  return corpus;
}

Outcome soundness_chain() {
  int drawn = 0, certificates = 0;
  const auto& corpus = gap_corpus(drawn);
  const int accepted = static_cast<int>(corpus.size());
  double worst_ratio = 1e300;
  bool ok = true;
  for (const auto& [p, certified] : corpus) {
    const auto report = gap_report(band_table(p, {2, 13, 128, 1}));
    for (int n : certified) {
      ++certificates;
      const double g = report.gaps[n - 1].length;
      worst_ratio = std::min(worst_ratio, g / report.gap_tolerance);
      ok = ok && g > report.gap_tolerance;
    }
  }
  ok = ok && accepted == 50;
  return {ok, std::to_string(accepted) + " curvatures (" + std::to_string(drawn) + " drawn), " +
                  std::to_string(certificates) + " certified indices, min G_n / tol = " + fmt(worst_ratio)};
}

Outcome comparison_rate() {
  const auto& p = sine(0.5);
  const std::vector<double> as = {0.02, 0.01, 0.005, 0.0025};
  double worst = 1e300;
  for (double theta : {0.0, pi / 2, pi}) {
    const auto mu = floquet_eigenvalues(comparison_hill(p, theta), 128, 4);
    std::vector<std::vector<double>> ep(4), em(4);
    for (double a : as) {
      const auto pair = comparison_operators(p, a, theta);
      const auto plus = floquet_eigenvalues(pair.plus, 128, 4);
      const auto minus = floquet_eigenvalues(pair.minus, 128, 4);
      for (int j = 0; j < 4; ++j) {
        ep[j].push_back(std::abs(plus[j] - mu[j]));
        em[j].push_back(std::abs(minus[j] - mu[j]));
      }
    }
    for (int j = 0; j < 4; ++j) {
      worst = std::min(worst, oracle::convergence_order(as, ep[j]));
      worst = std::min(worst, oracle::convergence_order(as, em[j]));
    }
  }
  return {worst >= 0.9, "min fitted order = " + fmt(worst)};
}

Outcome sandwich() {
  const auto& p = sine(0.3);
  BracketingOptions o;
  o.count = 2;
  bool ok = true;
  double margin = 1e300;
  for (double beta : {20.0, 40.0}) {
    for (double theta : {0.0, pi}) {
      const auto r = bracketing_report(p, beta, theta, o);
      for (int j = 0; j < 2; ++j) {
        const bool lower = r.tau_minus[j] - r.slack_minus[j] <= r.kappa_minus[j];
        const bool upper = r.kappa_plus[j] <= r.tau_plus[j] + r.slack_plus[j];
        ok = ok && lower && upper && r.bracketing_ok[j];
        margin = std::min({margin, r.kappa_minus[j] - r.tau_minus[j] + r.slack_minus[j],
                           r.tau_plus[j] + r.slack_plus[j] - r.kappa_plus[j]});
      }
    }
  }
  return {ok, "128^2 grids with Richardson, min sandwich margin = " + fmt(margin)};
}

Outcome trend() {
  const auto& p = sine(0.3);
  BracketingOptions o;
  o.count = 1;
  o.n_s = 32;
  o.n_u = 0;
  o.beta_h = 0.025;
  const double mu1 = floquet_eigenvalues(comparison_hill(p, 0.0), 128, 1)[0];
  std::vector<double> betas = {20.0, 40.0, 80.0}, res;
  for (double beta : betas) {
    FiberEigenOptions e = o.eigen;
    e.count = 1;
    const StripGrid g{o.n_s, adaptive_rows(beta, o.beta_h), 1.0, bracketing_halfwidth(beta)};
    const auto k = fiber_levels(p, beta, 0.0, FiberVariant::PlusDirichlet, g, e, true);
    res.push_back(std::abs(k.values[0] - (-beta * beta / 4 + mu1)));
  }
  const double C = res[0] * 20.0 / std::log(20.0);
  bool ok = res[1] < res[0] && res[2] < res[1];
  for (std::size_t i = 0; i < betas.size(); ++i) {
    ok = ok && res[i] <= 3 * C * std::log(betas[i]) / betas[i];
  }
  return {ok, "residuals " + fmt(res[0]) + ", " + fmt(res[1]) + ", " + fmt(res[2]) + " (C = " + fmt(C) + ")"};
}

Outcome form_ordering() {
  const auto& p = sine(0.3);
  const double beta = 20.0;
  const StripGrid g{32, 32, 1.0, bracketing_halfwidth(beta)};
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  int bad = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = angle(rng);
    for (bool plus : {true, false}) {
      const int rows = plus ? g.n_u - 1 : g.n_u + 1;
      Eigen::VectorXcd f(static_cast<Eigen::Index>(g.n_s) * rows);
      for (auto& x : f) x = {gauss(rng), gauss(rng)};
      const auto lo_v = plus ? FiberVariant::PlusDirichlet : FiberVariant::MinusSeparated;
      const auto hi_v = plus ? FiberVariant::PlusSeparated : FiberVariant::MinusRobin;
      const double lo = evaluate_form(p, beta, theta, lo_v, g, f);
      const double hi = evaluate_form(p, beta, theta, hi_v, g, f);
      const double rel = (lo - hi) / std::max(std::abs(lo), std::abs(hi));
      worst = std::max(worst, rel);
      if (rel > 1e-10) ++bad;
    }
  }
  return {bad == 0, "100 vectors x 2 pairs, violations " + std::to_string(bad) +
                        ", max relative (lower - upper) = " + fmt(worst)};
}

Outcome poschl_teller() {
  const double expected = -0.01968757625671514;
  const double closed = -std::pow((-1.0 + std::sqrt(1.0 + 0.64)) / 2.0, 2);
  const auto r = line_discrete_spectrum(CurvatureProfile::preset("sech", {{"c", 0.8}}), 40.0);
  const bool ok = r.count == 1 && std::abs(r.mu[0] - expected) <= 1e-6 &&
                  std::abs(closed - expected) < 1e-15;
  return {ok, std::to_string(r.count) + " level(s), mu_1 = " +
                  (r.count ? std::to_string(r.mu[0]) : std::string("none")) +
                  ", error " + (r.count ? fmt(std::abs(r.mu[0] - expected)) : std::string("-"))};
}

Outcome properties() {
  std::vector<CurvatureProfile> corpus = {
      CurvatureProfile::fourier(1.0, {}, {0.5}),
      CurvatureProfile::fourier(1.0, {}, {0.3}),
      CurvatureProfile::fourier(1.0, {0.2}, {0.5, 0.0, 0.3}),
      CurvatureProfile::fourier(2.0, {0.0, 0.7}, {0.4}),
      CurvatureProfile::fourier(0.7, {1.1}, {}),
      CurvatureProfile::preset("damped_sin", {{"c", 0.6}, {"r", 0.4}, {"L", 1.0}}),
  };
  int drawn = 0;
  for (const auto& e : gap_corpus(drawn)) corpus.push_back(e.profile);
  const BandTableOptions opts{17, 6, 64, 1};
  int failures = 0;
  std::ostringstream why;
  const auto fail = [&](const std::string& what, std::size_t i) {
    if (failures++ == 0) why << what << " on profile " << i;
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& p = corpus[i];
    const auto t = band_table(p, opts);
    const double tol = table_tolerance(t);
    if (t.symmetry_defect() > tol) fail("theta symmetry", i);

    std::vector<double> chain;
    for (int j = 0; j < opts.count; ++j) {
      if (j % 2 == 0) chain.insert(chain.end(), {t.edge_zero[j], t.edge_pi[j]});
      else chain.insert(chain.end(), {t.edge_pi[j], t.edge_zero[j]});
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
      if (chain[k - 1] > chain[k] + tol) fail("interlacing", i);
    }

    const auto shifted = band_table(p.shifted(0.37 * p.period()), opts);
    for (std::size_t r = 0; r < t.mu.size(); ++r) {
      for (int j = 0; j < opts.count; ++j) {
        if (std::abs(shifted.mu[r][j] - t.mu[r][j]) > 1e-9 * (1 + std::abs(t.mu[r][j]))) fail("shift covariance", i);
      }
    }

    for (double lambda : {0.5, 2.0}) {
      const auto scaled = band_table(p.scaled(lambda), opts);
      for (std::size_t r = 0; r < t.mu.size(); ++r) {
        for (int j = 0; j < opts.count; ++j) {
          const double want = lambda * lambda * t.mu[r][j];
          if (std::abs(scaled.mu[r][j] - want) > 1e-9 * (1 + std::abs(want))) fail("scaling covariance", i);
        }
      }
    }

    BandTableOptions par = opts;
    par.jobs = 4;
    const auto t4 = band_table(p, par);
    if (t4.mu != t.mu || t4.edge_zero != t.edge_zero || t4.edge_pi != t.edge_pi) fail("jobs determinism", i);
  }
  std::string detail = std::to_string(corpus.size()) + " profiles, failures " + std::to_string(failures);
  if (failures) detail += " (first: " + why.str() + ")";
  return {failures == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "free spectrum exactness", 1, free_spectrum},
      {2, "DirichletPlus transverse bounds", 1, plus_bounds},
      {3, "RobinMinus transverse bounds and uniqueness", 1, minus_bounds},
      {4, "Mathieu antiperiodic gap inequality", 5, mathieu},
      {5, "gap criterion soundness chain", 30, soundness_chain},
      {6, "comparison operator convergence rate", 10, comparison_rate},
      {7, "bracketing sandwich", 180, sandwich},
      {8, "strong coupling residual trend", 600, trend},
      {9, "discrete form ordering", 10, form_ordering},
      {10, "Poschl-Teller straight-line level", 5, poschl_teller},
      {11, "band table property suite", 60, properties},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.2f s of %.0f s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
