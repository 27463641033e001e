#pragma once

#include <cstdint>
#include <string>

namespace ftdft {

enum class DecayKind { Poly, SubExp };

/// Declared decay of one side of a function pair: |f(x)| <= sup_weighted /
/// weight(x) with weight (1+|x|)^exponent (Poly) or exp(rate |x|^power)
/// (SubExp). sup_weighted is a supplied or estimated upper bound.
class DecaySpec {
 public:
  static DecaySpec poly(double exponent, double sup_weighted);
  static DecaySpec sub_exp(double rate, double power, double sup_weighted);

  DecayKind kind() const { return kind_; }
  /// Poly exponent a; NaN for SubExp.
  double exponent() const { return exponent_; }
  /// SubExp rate r and power; NaN for Poly.
  double rate() const { return rate_; }
  double power() const { return power_; }
  double sup_weighted() const { return sup_weighted_; }

  double weight(double x) const;
  /// Upper envelope sup_weighted / weight(x) on |f(x)|.
  double envelope(double x) const;

  /// Upper bound on sum_{|l| > L} |f(x + spacing * l)| valid for every
  /// |x| <= offset. Requires spacing * L >= offset. For Poly the exponent
  /// must exceed 1.
  double shifted_tail_bound(double spacing, double offset, std::int64_t L) const;

  /// Smallest L (found by doubling, capped at max_terms) with
  /// shifted_tail_bound <= tol. Throws NumericalError past the cap.
  std::int64_t terms_for_tail(double spacing, double offset, double tol,
                              std::int64_t max_terms) const;

  std::string describe() const;

 private:
  DecaySpec() = default;
  DecayKind kind_ = DecayKind::Poly;
  double exponent_ = 0.0;
  double rate_ = 0.0;
  double power_ = 0.0;
  double sup_weighted_ = 0.0;
};

}  // namespace ftdft
