#include "ftdft/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ftdft/errors.hpp"
#include "ftdft/special.hpp"

namespace ftdft {

WeightSpec WeightSpec::polynomial(double alpha) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    throw ValidationError("polynomial weight needs alpha > 1/2, got " + std::to_string(alpha));
  }
  return WeightSpec(WeightKind::Polynomial, 0.0, alpha);
}

WeightSpec WeightSpec::sub_exponential(double r, double alpha) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ValidationError("sub-exponential weight needs r > 0, got " + std::to_string(r));
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("sub-exponential weight needs 0 < alpha <= 1, got " +
                          std::to_string(alpha));
  }
  return WeightSpec(WeightKind::SubExponential, r, alpha);
}

double WeightSpec::operator()(double x) const {
  const double ax = std::abs(x);
  if (kind_ == WeightKind::Polynomial) return std::pow(1.0 + ax, alpha_);
  return std::exp(rate_ * std::pow(ax, alpha_));
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  if (kind_ == WeightKind::Polynomial) {
    os << "Polynomial(alpha=" << alpha_ << ")";
  } else {
    os << "SubExponential(r=" << rate_ << ", alpha=" << alpha_ << ")";
  }
  return os.str();
}

double weight_eval(const WeightSpec& w, double x) { return w(x); }

namespace {

// int_{t0}^inf v(p t + p/2)^{-2} dt
double phi_tail_integral(const WeightSpec& w, double p, double t0) {
  const double u0 = p * t0 + 0.5 * p;
  const double a = w.alpha();
  if (w.kind() == WeightKind::Polynomial) {
    return std::pow(1.0 + u0, 1.0 - 2.0 * a) / (p * (2.0 * a - 1.0));
  }
  const double two_r = 2.0 * w.rate();
  if (a == 1.0) return std::exp(-two_r * u0) / (two_r * p);
  const double z = two_r * std::pow(u0, a);
  if (z > 745.0) return 0.0;
  return std::pow(two_r, -1.0 / a) * upper_incomplete_gamma(1.0 / a, z) / (p * a);
}

}  // namespace

double phi(const WeightSpec& w, double p, double tol) {
  if (!(p > 0.0)) throw ValidationError("phi: p must be positive");
  if (!(tol > 0.0)) throw ValidationError("phi: tol must be positive");
  if (w.kind() == WeightKind::Polynomial) {
    // (1 + p m + p/2)^{-2a} = p^{-2a} (m + 1/2 + 1/p)^{-2a}; the direct sum
    // converges far too slowly near a = 1/2.
    const double a = w.alpha();
    return std::sqrt(2.0 * hurwitz_zeta(2.0 * a, 0.5 + 1.0 / p)) * std::pow(p, -a);
  }
  constexpr std::int64_t kMaxTerms = 100'000'000;

  double sum = 0.0;
  double comp = 0.0;  // Neumaier compensation
  std::int64_t m = 0;
  for (;; ++m) {
    const double v = w(p * static_cast<double>(m) + 0.5 * p);
    const double g = 1.0 / (v * v);
    // Remainder after m terms lies in [I(m), I(m-1)]; width <= g(m-1).
    // Checking the current term first keeps the bracket test one step ahead.
    const double t = sum + g;
    comp += (std::abs(sum) >= g) ? (sum - t) + g : (g - t) + sum;
    sum = t;
    if (2.0 * g <= tol) {
      ++m;
      break;
    }
    if (m >= kMaxTerms) {
      throw NumericalError("phi: tail bound for " + w.describe() +
                           " cannot reach tol within 1e8 terms (p=" + std::to_string(p) + ")");
    }
  }
  // Terms 0..m-1 summed; the last one satisfies 2 g(m-1) <= tol, so the
  // squared value lies within tol of 2 (sum + I(m)) below 2 (sum + I(m-1)).
  const double upper = 2.0 * (sum + comp + phi_tail_integral(w, p, static_cast<double>(m - 1)));
  return std::sqrt(upper);
}

double sub_exponential_phi_threshold(const WeightSpec& w) {
  if (w.kind() != WeightKind::SubExponential) {
    throw ValidationError("sub_exponential_phi_threshold: weight is polynomial");
  }
  const double a = w.alpha();
  return std::pow(std::pow(2.0, a) / (2.0 * w.rate() * a), 1.0 / a);
}

double phi_bound(const WeightSpec& w, double p) {
  if (!(p > 0.0)) throw ValidationError("phi_bound: p must be positive");
  const double a = w.alpha();
  if (w.kind() == WeightKind::Polynomial) {
    return std::pow(p, -a) * std::pow(2.0, a + 0.5) * std::sqrt(1.0 + 1.0 / (4.0 * a - 2.0));
  }
  const double r = w.rate();
  const double decay = std::exp(-r * std::pow(0.5 * p, a));
  const double threshold = sub_exponential_phi_threshold(w);
  if (p >= threshold) return decay * std::sqrt(2.0 + 1.0 / a);
  if (p >= 1.0) {
    const double u = r * std::pow(2.0, 1.0 - a);
    const double gamma_term = upper_incomplete_gamma_scaled(1.0 / a, u) / std::pow(u, 1.0 / a);
    return decay * std::sqrt(2.0 + gamma_term / a);
  }
  std::ostringstream os;
  os << "phi_bound: " << w.describe() << " requires p >= 1 (or p >= " << threshold
     << " for the simple form), got p=" << p;
  throw ValidationError(os.str());
}

namespace {

// Bound on sum_{d >= L} envelope(d)^2 v(d+1)^2. Both the positive cells
// l >= L and the negative cells l <= -L-1 (where |x| >= |l| - 1 = d) are
// dominated by this summand, so the squared-norm tail is twice it.
double amalgam_tail_sq(const WeightSpec& w, const DecaySpec& decay, std::int64_t L) {
  const double S = decay.sup_weighted();
  if (S == 0.0) return 0.0;
  const auto Ld = static_cast<double>(L);
  if (decay.kind() == DecayKind::Poly) {
    // S^2 (1+d)^{-2a} (2+d)^{2 alpha} <= S^2 4^alpha (1+d)^{-gamma}
    const double gamma = 2.0 * decay.exponent() - 2.0 * w.alpha();
    const double head = std::pow(1.0 + Ld, -gamma);
    const double integral = std::pow(1.0 + Ld, 1.0 - gamma) / (gamma - 1.0);
    return 2.0 * S * S * std::pow(4.0, w.alpha()) * (head + integral);
  }
  // Sub-exponential decay: sum the dominating terms directly until they are
  // negligible against the accumulated tail.
  constexpr std::int64_t kMaxTerms = 100'000'000;
  double sum = 0.0;
  double prev = INFINITY;
  for (std::int64_t d = L; d < L + kMaxTerms; ++d) {
    const auto dd = static_cast<double>(d);
    const double env = decay.envelope(dd);
    const double v = w(dd + 1.0);
    const double term = env * env * v * v;
    sum += term;
    const bool decreasing = term <= prev;
    prev = term;
    if (term == 0.0 || (decreasing && d > L + 64 && term <= 1e-18 * sum)) return 2.0 * sum;
  }
  throw NumericalError("amalgam_norm: tail for weight " + w.describe() + " and decay " +
                       decay.describe() + " does not settle (partial sums keep growing)");
}

void check_convergent(const WeightSpec& w, const DecaySpec& decay) {
  bool ok = true;
  if (decay.kind() == DecayKind::Poly) {
    ok = w.kind() == WeightKind::Polynomial && decay.exponent() - w.alpha() > 0.5;
  } else if (w.kind() == WeightKind::SubExponential) {
    ok = w.alpha() < decay.power() || (w.alpha() == decay.power() && w.rate() < decay.rate());
  }
  if (!ok) {
    throw ValidationError("amalgam_norm: weight " + w.describe() + " with decay " +
                          decay.describe() + " gives a divergent series");
  }
}

}  // namespace

AmalgamNormEstimate amalgam_norm(const ScalarFunction& f, const WeightSpec& w,
                                 const DecaySpec& decay, const AmalgamConfig& cfg) {
  if (cfg.samples_per_cell < 2) throw ValidationError("amalgam_norm: samples_per_cell >= 2");
  if (!(cfg.tol > 0.0)) throw ValidationError("amalgam_norm: tol must be positive");
  if (cfg.max_cells < 1) throw ValidationError("amalgam_norm: max_cells >= 1");
  check_convergent(w, decay);

  std::int64_t L = 1;
  double tail_sq = amalgam_tail_sq(w, decay, L);
  while (tail_sq > cfg.tol && L < cfg.max_cells) {
    L = std::min(cfg.max_cells, 2 * L);
    tail_sq = amalgam_tail_sq(w, decay, L);
  }

  const int spc = cfg.samples_per_cell;
  const auto cell_sup = [&](std::int64_t l) {
    double best = 0.0;
    for (int i = 0; i < spc; ++i) {
      const double x = static_cast<double>(l) + static_cast<double>(i) / (spc - 1);
      best = std::max(best, std::abs(f(x)));
    }
    return best;
  };

  // Sum from the outside in so small tail terms are not swamped.
  double sum = 0.0;
  for (std::int64_t d = L - 1; d >= 0; --d) {
    const double vp = w(static_cast<double>(d));
    const double vn = w(static_cast<double>(-d - 1));
    const double sp = cell_sup(d);
    const double sn = cell_sup(-d - 1);
    sum += sp * sp * vp * vp + sn * sn * vn * vn;
  }
  AmalgamNormEstimate est;
  est.value = std::sqrt(sum);
  est.truncation_tail_bound = std::sqrt(tail_sq);
  est.samples_per_cell = spc;
  est.cells_per_side = L;
  return est;
}

}  // namespace ftdft
