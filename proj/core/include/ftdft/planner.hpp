#pragma once

#include <cstddef>
#include <string>

#include "ftdft/decay.hpp"
#include "ftdft/dft_engine.hpp"
#include "ftdft/weights.hpp"

namespace ftdft {

enum class Regime { PolyPoly, SubExpSubExp, Mixed };

std::string regime_name(Regime r);

/// Slack subtracted from weight exponents (or rate fraction) when a
/// weight must make the amalgam norm finite rather than just set a rate.
inline constexpr double kCertificateEpsilon = 1e-3;

/// Weight that balances plans: Poly(a) -> polynomial(a - 1/2),
/// SubExp(r, power) -> sub_exponential(r, power).
WeightSpec rate_weight(const DecaySpec& d);

/// Weight under which the amalgam norm of a function with decay d is
/// finite: polynomial(a - 1/2 - eps) or sub_exponential(r (1 - eps), power).
WeightSpec certificate_weight(const DecaySpec& d, double eps = kCertificateEpsilon);

struct PlanRequest {
  DecaySpec time_decay;
  DecaySpec freq_decay;
  std::size_t n;
  /// Factor applied to the closed-form h; 1 reproduces the balancing rule.
  double multiplier = 1.0;
};

/// Error exponent in n, E ~ n^{-rate}.
///   PolyPoly:     alpha beta / (alpha + beta), alpha = a - 1/2, beta = b - 1/2.
///   Mixed:        the exponent of the polynomial side (E ~ h^beta up to
///                 logarithmic factors with h ~ n^{-1} log(n)^{1/power}).
///   SubExpSubExp: +infinity (faster than any power).
struct RatePrediction {
  double rate = 0.0;
  Regime regime = Regime::PolyPoly;
};

RatePrediction predicted_rate(const DecaySpec& time, const DecaySpec& freq);

/// Rate for h = c_h n^{e_h} and p = c_p n^{e_p} (e_h + e_p = 1): the slower of
/// alpha e_p and -beta e_h over the polynomial sides. Sub-exponential sides
/// are treated as negligible; returns +infinity when both are.
double predicted_rate_for_exponents(const DecaySpec& time, const DecaySpec& freq, double e_h,
                                    double e_p);

struct PlannedStep {
  SamplingPlan plan;
  RatePrediction rate;
};

/// Closed-form balancing of the time and frequency error terms.
///   PolyPoly:     h = n^{-alpha/(alpha+beta)}
///   SubExpSubExp: h = n^{-alpha/(alpha+beta)} (s/r)^{1/(alpha+beta)} 2^{(alpha-beta)/(alpha+beta)}
///   Mixed:        h = n^{-1} 2 (beta/(alpha r))^{1/alpha} W^{1/alpha}(alpha n^alpha r / (2^alpha beta))
/// for sub-exponential time decay; the reverse mixed case is planned on the
/// dual problem and mapped back.
PlannedStep plan_step(const PlanRequest& req);

/// Principal branch of the Lambert W function on [0, inf).
double lambert_w(double x);

struct BoundConstants {
  double c_time = 0.0;
  double c_freq = 0.0;
};

/// Explicit error bound for a plan given amalgam norms of f (weight v) and
/// fhat (weight w).
///
/// time_term and freq_term use the closed-form constants:
///   polynomial v_alpha:         c_alpha p^{-alpha}, c_s = 2^{2s+1} (1 + 1/(4s-2))^{1/2}
///   sub-exponential v_{r,alpha}: c_{r,alpha} e^{-r (p/2)^alpha}, c = e^r (4 + 2/alpha)^{1/2}
/// with p replaced by 1/h on the frequency side. The general-weight chain
/// v(1) Phi_v(p) (1+h)^{1/2} ||f|| + w(1) Phi_w(1/h) (1+1/p)^{1/2} ||fhat||
/// (Phi evaluated numerically) and its 2^{1/2} simplification are reported
/// alongside.
struct BoundReport {
  double time_term = 0.0;
  double freq_term = 0.0;
  double total = 0.0;
  BoundConstants constants_used;
  Regime regime = Regime::PolyPoly;
  double chain_total = 0.0;
  double chain_simplified_total = 0.0;
};

/// Requires 0 < h <= 1 <= p, p >= ((2^alpha)/(2 r alpha))^{1/alpha} for a
/// sub-exponential v, and 1/h past the same threshold for a
/// sub-exponential w.
BoundReport bound_total(double norm_time, double norm_freq, const WeightSpec& v,
                        const WeightSpec& w, const SamplingPlan& plan);

}  // namespace ftdft
