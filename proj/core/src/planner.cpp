#include "ftdft/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ftdft/errors.hpp"

namespace ftdft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Regime classify(const DecaySpec& time, const DecaySpec& freq) {
  const bool tp = time.kind() == DecayKind::Poly;
  const bool fp = freq.kind() == DecayKind::Poly;
  if (tp && fp) return Regime::PolyPoly;
  if (!tp && !fp) return Regime::SubExpSubExp;
  return Regime::Mixed;
}

// a - 1/2, checked against the weight admissibility alpha > 1/2.
double poly_weight_exponent(const DecaySpec& d, const char* side) {
  const double alpha = d.exponent() - 0.5;
  if (!(alpha > 0.5)) {
    std::ostringstream os;
    os << side << " decay " << d.describe()
       << " gives weight exponent a - 1/2 <= 1/2; need decay exponent > 1";
    throw ValidationError(os.str());
  }
  return alpha;
}

void check_subexp(const DecaySpec& d, const char* side) {
  if (!(d.rate() > 0.0) || !(d.power() > 0.0 && d.power() <= 1.0)) {
    std::ostringstream os;
    os << side << " decay " << d.describe() << " needs rate > 0 and 0 < power <= 1";
    throw ValidationError(os.str());
  }
}

// h for sub-exponential time decay (r, alpha) against polynomial frequency
// weight exponent beta.
double mixed_step(std::size_t n, double r, double alpha, double beta) {
  const double nd = static_cast<double>(n);
  const double z = alpha * std::pow(nd, alpha) * r / (std::pow(2.0, alpha) * beta);
  return 2.0 / nd * std::pow(beta / (alpha * r), 1.0 / alpha) *
         std::pow(lambert_w(z), 1.0 / alpha);
}

double c_poly(double s) {
  return std::pow(2.0, 2.0 * s + 1.0) * std::sqrt(1.0 + 1.0 / (4.0 * s - 2.0));
}

double c_subexp(double r, double alpha) { return std::exp(r) * std::sqrt(4.0 + 2.0 / alpha); }

// Constant and decay factor of one side at tail length q (p for time,
// 1/h for frequency).
std::pair<double, double> side_term(const WeightSpec& v, double q, const char* side,
                                    const char* qname) {
  if (v.kind() == WeightKind::Polynomial) {
    return {c_poly(v.alpha()), std::pow(q, -v.alpha())};
  }
  const double threshold = sub_exponential_phi_threshold(v);
  if (q < threshold) {
    std::ostringstream os;
    os << "bound_total: " << side << " weight " << v.describe() << " needs " << qname
       << " >= " << threshold << ", got " << q;
    throw ValidationError(os.str());
  }
  return {c_subexp(v.rate(), v.alpha()), std::exp(-v.rate() * std::pow(0.5 * q, v.alpha()))};
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::PolyPoly:
      return "PolyPoly";
    case Regime::SubExpSubExp:
      return "SubExpSubExp";
    case Regime::Mixed:
      return "Mixed";
  }
  return "?";
}

WeightSpec rate_weight(const DecaySpec& d) {
  if (d.kind() == DecayKind::Poly) return WeightSpec::polynomial(d.exponent() - 0.5);
  return WeightSpec::sub_exponential(d.rate(), d.power());
}

WeightSpec certificate_weight(const DecaySpec& d, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("certificate_weight: eps must be in (0, 1)");
  if (d.kind() == DecayKind::Poly) return WeightSpec::polynomial(d.exponent() - 0.5 - eps);
  return WeightSpec::sub_exponential(d.rate() * (1.0 - eps), d.power());
}

RatePrediction predicted_rate(const DecaySpec& time, const DecaySpec& freq) {
  const Regime regime = classify(time, freq);
  switch (regime) {
    case Regime::PolyPoly: {
      const double a = poly_weight_exponent(time, "time");
      const double b = poly_weight_exponent(freq, "frequency");
      return {a * b / (a + b), regime};
    }
    case Regime::Mixed: {
      const DecaySpec& poly = time.kind() == DecayKind::Poly ? time : freq;
      return {poly_weight_exponent(poly, "polynomial-side"), regime};
    }
    case Regime::SubExpSubExp:
      check_subexp(time, "time");
      check_subexp(freq, "frequency");
      return {kInf, regime};
  }
  return {};
}

double predicted_rate_for_exponents(const DecaySpec& time, const DecaySpec& freq, double e_h,
                                    double e_p) {
  double rate = kInf;
  if (time.kind() == DecayKind::Poly) rate = std::min(rate, poly_weight_exponent(time, "time") * e_p);
  if (freq.kind() == DecayKind::Poly) {
    rate = std::min(rate, -poly_weight_exponent(freq, "frequency") * e_h);
  }
  return rate;
}

PlannedStep plan_step(const PlanRequest& req) {
  if (req.n == 0) throw ValidationError("plan_step: n must be positive");
  if (!(req.multiplier > 0.0) || !std::isfinite(req.multiplier)) {
    throw ValidationError("plan_step: multiplier must be positive and finite");
  }
  const RatePrediction rate = predicted_rate(req.time_decay, req.freq_decay);
  const double nd = static_cast<double>(req.n);
  double h = 0.0;
  switch (rate.regime) {
    case Regime::PolyPoly: {
      const double a = req.time_decay.exponent() - 0.5;
      const double b = req.freq_decay.exponent() - 0.5;
      h = std::pow(nd, -a / (a + b));
      break;
    }
    case Regime::SubExpSubExp: {
      const double r = req.time_decay.rate();
      const double a = req.time_decay.power();
      const double s = req.freq_decay.rate();
      const double b = req.freq_decay.power();
      h = std::pow(nd, -a / (a + b)) * std::pow(s / r, 1.0 / (a + b)) *
          std::pow(2.0, (a - b) / (a + b));
      break;
    }
    case Regime::Mixed: {
      if (req.time_decay.kind() == DecayKind::SubExp) {
        check_subexp(req.time_decay, "time");
        h = mixed_step(req.n, req.time_decay.rate(), req.time_decay.power(),
                       req.freq_decay.exponent() - 0.5);
      } else {
        // Dual problem: step 1/p with sub-exponential time side.
        check_subexp(req.freq_decay, "frequency");
        const double h_dual = mixed_step(req.n, req.freq_decay.rate(), req.freq_decay.power(),
                                         req.time_decay.exponent() - 0.5);
        h = 1.0 / (h_dual * nd);
      }
      break;
    }
  }
  return {SamplingPlan::from_step(req.n, req.multiplier * h), rate};
}

double lambert_w(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw ValidationError("lambert_w: x must be finite and >= 0");
  }
  if (x == 0.0) return 0.0;
  const double target = 1e-12 * std::max(x, 1.0);
  double w = std::log1p(x);
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= target) return w;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (next == w) return w;
    w = next;
  }
  if (std::abs(w * std::exp(w) - x) <= target) return w;
  throw NumericalError("lambert_w: Halley iteration did not converge");
}

BoundReport bound_total(double norm_time, double norm_freq, const WeightSpec& v,
                        const WeightSpec& w, const SamplingPlan& plan) {
  if (!(norm_time >= 0.0) || !(norm_freq >= 0.0)) {
    throw ValidationError("bound_total: norms must be nonnegative");
  }
  const double h = plan.h();
  const double p = plan.p();
  if (!(h > 0.0 && h <= 1.0 && p >= 1.0)) {
    std::ostringstream os;
    os << "bound_total: requires 0 < h <= 1 <= p, got h=" << h << ", p=" << p;
    throw ValidationError(os.str());
  }
  const auto [ct, dt] = side_term(v, p, "time", "p");
  const auto [cf, df] = side_term(w, 1.0 / h, "frequency", "1/h");

  BoundReport r;
  const bool vp = v.kind() == WeightKind::Polynomial;
  const bool wp = w.kind() == WeightKind::Polynomial;
  r.regime = vp && wp ? Regime::PolyPoly : (!vp && !wp ? Regime::SubExpSubExp : Regime::Mixed);
  r.constants_used = {ct, cf};
  r.time_term = ct * dt * norm_time;
  r.freq_term = cf * df * norm_freq;
  r.total = r.time_term + r.freq_term;

  const double vt = v(1.0) * phi(v, p) * norm_time;
  const double wt = w(1.0) * phi(w, 1.0 / h) * norm_freq;
  r.chain_total = vt * std::sqrt(1.0 + h) + wt * std::sqrt(1.0 + 1.0 / p);
  r.chain_simplified_total = std::numbers::sqrt2 * (vt + wt);
  return r;
}

}  // namespace ftdft
