// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ftdft/corpus.hpp"
#include "ftdft/dft_engine.hpp"
#include "ftdft/harness.hpp"
#include "ftdft/interp.hpp"
#include "ftdft/planner.hpp"
#include "ftdft/special.hpp"
#include "ftdft/weights.hpp"
#include "support/oracles.hpp"

using namespace ftdft;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  %-28s (%.1fs)  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

ConvergenceRun run_sweep(const std::string& fn, Rule rule, int l_min, int l_max) {
  ExperimentConfig cfg;
  cfg.function = fn;
  cfg.rule = rule;
  cfg.l_min = l_min;
  cfg.l_max = l_max;
  return sweep(cfg);
}

const std::vector<std::pair<std::string, double>> kPolySweeps = {
    {"fab:2,2", 3.0 / 4.0},  {"fab:2,3", 15.0 / 16.0}, {"fab:2,4", 21.0 / 20.0},
    {"fab:3,2", 15.0 / 16.0}, {"fab:3,3", 5.0 / 4.0},  {"fab:3,4", 35.0 / 24.0}};

// Filled by the polynomial sweep criterion and reused by bound domination and the
// decomposition check.
std::vector<ConvergenceRun> poly_runs;

}  // namespace

int main() {
  criterion("poly-decay-slopes", [] {
    Outcome o;
    for (const auto& [fn, rate] : kPolySweeps) {
      poly_runs.push_back(run_sweep(fn, {}, 10, 18));
      const double s = poly_runs.back().fitted_slope;
      o.note(fn + fmt(" %.4f", s));
      if (!(std::abs(s + rate) <= 0.06)) o.fail(fn + fmt(" target -%.4f", rate));
    }
    return o;
  });

  criterion("mixed-decay-slopes", [] {
    Outcome o;
    const struct {
      Rule rule;
      double rate;
      const char* label;
    } cases[] = {{{RuleKind::FixedP, 1.0, 0.5}, 3.0 / 4.0, "p=n^(1/2)"},
                 {{RuleKind::FixedP, 6.0, 0.1}, 27.0 / 20.0, "p=6n^(1/10)"},
                 {{RuleKind::FixedP, 10.0, 0.0}, 3.0 / 2.0, "p=10"}};
    for (const auto& c : cases) {
      // sweep() already drops rows below the 1e-12 floor from the fit.
      const auto run = run_sweep("exp_abs", c.rule, 7, 18);
      o.note(std::string(c.label) + fmt(" %.4f", run.fitted_slope));
      if (!(std::abs(run.fitted_slope + c.rate) <= 0.08)) {
        o.fail(std::string(c.label) + fmt(" target -%.4f", c.rate));
      }
    }
    return o;
  });

  criterion("symmetry", [] {
    Outcome o;
    double worst = 0.0;
    int checked = 0;
    for (const auto& name : corpus_names()) {
      const auto fp = corpus_get(name);
      const auto dual = symmetry_pair(fp);
      for (std::size_t n : {std::size_t{256}, std::size_t{1024}}) {
        const auto plan = plan_for(fp, {}, n);
        const double e = error_l2(fp, plan).e_l2;
        const double ed = error_l2(dual, plan.dual()).e_l2;
        const double scale = std::max(e, 1e-14);
        worst = std::max(worst, std::abs(e - ed) / scale);
        ++checked;
        if (!(std::abs(e - ed) <= 1e-8 * scale)) o.fail(name + " n=" + std::to_string(n));
      }
    }
    o.note(std::to_string(checked) + " cases, worst relative" + fmt(" %.2e", worst));
    return o;
  });

  criterion("bound-domination", [] {
    Outcome o;
    int rows = 0, violations = 0;
    double worst = 0.0;
    for (const auto& run : poly_runs) {
      for (const auto& r : run.rows) {
        ++rows;
        if (!(r.e_l2 <= r.bound_total)) {
          ++violations;
          o.fail(run.label + " n=" + std::to_string(r.n));
        } else {
          worst = std::max(worst, r.e_l2 / r.bound_total);
        }
      }
    }
    if (rows == 0) o.fail("no sweep rows");
    o.note(std::to_string(rows) + " rows, " + std::to_string(violations) +
           " violations, max e_l2/bound" + fmt(" %.3g", worst));
    return o;
  });

  criterion("poisson-decomposition", [] {
    Outcome o;
    constexpr double tol = 1e-10;
    const struct {
      const char* fn;
      std::size_t n;
      double h;
      long k;
    } settings[] = {{"gauss", 32, 0.25, 0},      {"gauss", 64, 0.125, 5},
                    {"gauss", 16, 0.5, -3},      {"exp_abs", 64, 0.125, 3},
                    {"exp_abs", 128, 0.0625, 0}, {"exp_abs", 256, 0.03125, -5}};
    double worst = 0.0;
    for (const auto& s : settings) {
      const double d = poisson_check(corpus_get(s.fn), SamplingPlan::from_step(s.n, s.h), s.k, tol);
      worst = std::max(worst, d);
      if (!(d <= 3.0 * tol)) o.fail(std::string(s.fn) + " k=" + std::to_string(s.k) + fmt(" %.2e", d));
    }
    o.note(fmt("poisson worst %.2e", worst));

    // E <= ||freq alias|| + ||time alias||, with the unfolded remainders
    // bounded and a rounding allowance.
    int rows = 0;
    double tightest = 0.0;
    DecompositionOptions opts;
    opts.eval_budget = std::int64_t{1} << 21;
    for (const auto& run : poly_runs) {
      const auto fp = corpus_get(run.label);
      for (const auto& r : run.rows) {
        const auto plan = plan_for(fp, {}, r.n);
        const auto d = decomposition_terms(fp, plan, opts);
        const double rhs =
            d.freq_alias + d.time_alias + d.freq_tail_bound + d.time_tail_bound;
        ++rows;
        tightest = std::max(tightest, r.e_l2 / rhs);
        if (!(r.e_l2 <= rhs * (1.0 + 1e-12) + 1e-15)) {
          o.fail("decomposition " + run.label + " n=" + std::to_string(r.n));
        }
      }
    }
    o.note(std::to_string(rows) + " decomposition rows, max E/rhs" + fmt(" %.4f", tightest));
    return o;
  });

  criterion("unitarity-inversion", [] {
    Outcome o;
    double worst_norm = 0.0, worst_inv = 0.0;
    for (std::size_t n : {std::size_t{4}, std::size_t{64}, std::size_t{1024}}) {
      const SampledVector x(oracle::random_vector(n, 7u + static_cast<unsigned>(n)));
      const auto y = dft_unitary(x);
      const auto back = dft_unitary_adjoint(y);
      double diff = 0.0;
      for (std::size_t m = 0; m < n; ++m) diff += std::norm(back.physical()[m] - x.physical()[m]);
      const double rel_norm = std::abs(y.norm() - x.norm()) / x.norm();
      const double rel_inv = std::sqrt(diff) / x.norm();
      worst_norm = std::max(worst_norm, rel_norm);
      worst_inv = std::max(worst_inv, rel_inv);
      if (!(rel_norm <= 1e-13)) o.fail("norm n=" + std::to_string(n));
      if (!(rel_inv <= 1e-13)) o.fail("round trip n=" + std::to_string(n));
    }
    const std::size_t n = 256;
    const auto xs = oracle::random_vector(n, 99);
    std::vector<oracle::cld> xl(xs.begin(), xs.end());
    const auto ref = oracle::direct_dft(xl);
    const auto y = dft_unitary(SampledVector(xs));
    long double diff = 0, nrm = 0;
    for (std::size_t m = 0; m < n; ++m) {
      diff += std::norm(oracle::cld(y.physical()[m]) - ref[m]);
      nrm += std::norm(ref[m]);
    }
    const double rel = static_cast<double>(std::sqrt(diff / nrm));
    if (!(rel <= 1e-11)) o.fail("direct DFT n=256");
    o.note(fmt("norm %.1e", worst_norm) + fmt(", round trip %.1e", worst_inv) +
           fmt(", direct %.1e", rel));
    return o;
  });

  criterion("special-functions", [] {
    Outcome o;
    const double z = hurwitz_zeta_half(2.0);
    const double direct = static_cast<double>(oracle::hurwitz_half_bruteforce(2.0L, 10'000'000));
    if (!(std::abs(z - direct) <= 1e-10)) o.fail(fmt("zeta(2,1/2) = %.15g", z));
    o.note(fmt("zeta(2,1/2) diff %.1e", std::abs(z - direct)));

    double worst_w = 0.0;
    for (double x : {0.0, 0.5, 1.0, std::numbers::e, 10.0, 1e4}) {
      const double w = lambert_w(x);
      const double r = std::abs(w * std::exp(w) - x) / std::max(x, 1.0);
      worst_w = std::max(worst_w, r);
      if (!(r <= 1e-12)) o.fail(fmt("W(%g)", x));
    }
    o.note(fmt("W residual %.1e", worst_w));

    const WeightSpec weights[] = {WeightSpec::polynomial(0.75), WeightSpec::polynomial(1.5),
                                  WeightSpec::polynomial(3.0), WeightSpec::sub_exponential(1.0, 1.0),
                                  WeightSpec::sub_exponential(0.5, 0.5)};
    int grid = 0;
    for (const auto& w : weights) {
      for (double p : {1.0, 2.0, 8.0, 32.0}) {
        ++grid;
        const double ph = phi(w, p), pb = phi_bound(w, p);
        if (!(ph <= pb)) o.fail(w.describe() + fmt(" p=%g", p));
      }
    }
    o.note(std::to_string(grid) + " phi points");
    return o;
  });

  criterion("interpolation-slopes", [] {
    Outcome o;
    const auto fp = corpus_get("fab:3,3");
    std::vector<std::pair<double, double>> sinc_pts, b1_pts;
    for (int l = 8; l <= 14; ++l) {
      const std::size_t n = std::size_t{1} << l;
      const auto plan = plan_for(fp, {}, n);
      sinc_pts.emplace_back(static_cast<double>(n), interp_l2_error(fp, plan, Kernel::Sinc).main);
      b1_pts.emplace_back(static_cast<double>(n), interp_l2_error(fp, plan, Kernel::B1).main);
    }
    const double s_sinc = fit_slope(sinc_pts).slope;
    const double s_b1 = fit_slope(b1_pts).slope;
    o.note(fmt("sinc %.4f", s_sinc) + fmt(", B1 %.4f", s_b1));
    if (!(std::abs(s_sinc + 1.25) <= 0.15)) o.fail("sinc slope");
    if (!(-s_b1 <= 1.15)) o.fail("B1 slope");
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
