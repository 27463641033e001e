#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

#include "ftdft/decay.hpp"
#include "ftdft/special.hpp"

namespace ftdft {

using ScalarFunction = std::function<std::complex<double>(double)>;

enum class WeightKind { Polynomial, SubExponential };

/// Weight function v on R: (1+|x|)^alpha or exp(r |x|^alpha).
///
/// Both families are even, nondecreasing in |x|, submultiplicative and
/// inverse square-summable on Z for the admitted parameter ranges
/// (alpha > 1/2 for the polynomial weight; r > 0, 0 < alpha <= 1 for the
/// sub-exponential one). Parameters are validated on construction.
class WeightSpec {
 public:
  static WeightSpec polynomial(double alpha);
  static WeightSpec sub_exponential(double r, double alpha);

  WeightKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  /// r for sub-exponential weights, 0 for polynomial ones.
  double rate() const { return rate_; }

  double operator()(double x) const;
  std::string describe() const;

 private:
  WeightSpec(WeightKind kind, double rate, double alpha) : kind_(kind), rate_(rate), alpha_(alpha) {}
  WeightKind kind_;
  double rate_;
  double alpha_;
};

double weight_eval(const WeightSpec& w, double x);

/// Phi_v(p) = (2 sum_{m>=0} v(p m + p/2)^{-2})^{1/2}.
///
/// The squared sum is bracketed by partial summation and the integral
/// test on the (nonincreasing) summand; summation stops when the bracket
/// width on the squared value is <= tol and the upper end of the bracket
/// is returned. Throws NumericalError past 1e8 terms.
double phi(const WeightSpec& w, double p, double tol = 1e-14);

/// Closed-form upper bounds on Phi_v(p).
///   polynomial:       p^{-alpha} 2^{alpha+1/2} (1 + 1/(4 alpha - 2))^{1/2}
///   sub-exponential:  e^{-r (p/2)^alpha} (2 + 1/alpha)^{1/2} once
///                     p >= (2^alpha / (2 r alpha))^{1/alpha}; for
///                     1 <= p below that threshold, the incomplete-Gamma
///                     form is used.
/// Throws ValidationError when p is outside both ranges.
double phi_bound(const WeightSpec& w, double p);

/// Threshold on p above which the simple sub-exponential bound holds.
double sub_exponential_phi_threshold(const WeightSpec& w);

struct AmalgamConfig {
  int samples_per_cell = 64;
  /// Target for the tail of the squared norm.
  double tol = 1e-12;
  /// Largest number of unit cells sampled on each side of the origin.
  std::int64_t max_cells = std::int64_t{1} << 14;
};

/// Numerical W(C, l^2_v) norm. `value` is a lower estimate (per-cell sups
/// are maxima over sample points); `value + truncation_tail_bound` bounds
/// the norm from above under the declared decay metadata.
struct AmalgamNormEstimate {
  double value = 0.0;
  double truncation_tail_bound = 0.0;
  int samples_per_cell = 0;
  std::int64_t cells_per_side = 0;

  double upper() const { return value + truncation_tail_bound; }
};

/// Throws ValidationError when the weight/decay combination makes the
/// series diverge, NumericalError if a sub-exponential tail does not settle.
AmalgamNormEstimate amalgam_norm(const ScalarFunction& f, const WeightSpec& w,
                                 const DecaySpec& decay, const AmalgamConfig& cfg = {});

}  // namespace ftdft
