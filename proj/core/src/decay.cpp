#include "ftdft/decay.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ftdft/errors.hpp"
#include "ftdft/special.hpp"

namespace ftdft {

DecaySpec DecaySpec::poly(double exponent, double sup_weighted) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ValidationError("DecaySpec::poly: exponent must be positive and finite");
  }
  if (!(sup_weighted >= 0.0) || !std::isfinite(sup_weighted)) {
    throw ValidationError("DecaySpec::poly: sup_weighted must be finite and >= 0");
  }
  DecaySpec d;
  d.kind_ = DecayKind::Poly;
  d.exponent_ = exponent;
  d.rate_ = std::numeric_limits<double>::quiet_NaN();
  d.power_ = std::numeric_limits<double>::quiet_NaN();
  d.sup_weighted_ = sup_weighted;
  return d;
}

DecaySpec DecaySpec::sub_exp(double rate, double power, double sup_weighted) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ValidationError("DecaySpec::sub_exp: rate must be positive");
  }
  if (!(power > 0.0 && power <= 1.0)) {
    throw ValidationError("DecaySpec::sub_exp: power must lie in (0, 1]");
  }
  if (!(sup_weighted >= 0.0) || !std::isfinite(sup_weighted)) {
    throw ValidationError("DecaySpec::sub_exp: sup_weighted must be finite and >= 0");
  }
  DecaySpec d;
  d.kind_ = DecayKind::SubExp;
  d.exponent_ = std::numeric_limits<double>::quiet_NaN();
  d.rate_ = rate;
  d.power_ = power;
  d.sup_weighted_ = sup_weighted;
  return d;
}

double DecaySpec::weight(double x) const {
  const double ax = std::abs(x);
  if (kind_ == DecayKind::Poly) return std::pow(1.0 + ax, exponent_);
  return std::exp(rate_ * std::pow(ax, power_));
}

double DecaySpec::envelope(double x) const {
  const double ax = std::abs(x);
  if (kind_ == DecayKind::Poly) return sup_weighted_ * std::pow(1.0 + ax, -exponent_);
  return sup_weighted_ * std::exp(-rate_ * std::pow(ax, power_));
}

double DecaySpec::shifted_tail_bound(double spacing, double offset, std::int64_t L) const {
  if (!(spacing > 0.0)) throw ValidationError("shifted_tail_bound: spacing must be positive");
  const double u0 = spacing * static_cast<double>(L) - std::abs(offset);
  if (u0 < 0.0) {
    throw ValidationError("shifted_tail_bound: spacing * L must cover the offset");
  }
  if (sup_weighted_ == 0.0) return 0.0;
  // Both sides l > L and l < -L contribute; the summand
  // envelope(spacing * t - offset) is nonincreasing on [L, inf).
  if (kind_ == DecayKind::Poly) {
    if (!(exponent_ > 1.0)) {
      throw ValidationError("shifted_tail_bound: Poly exponent must exceed 1 for summability");
    }
    return 2.0 * sup_weighted_ * std::pow(1.0 + u0, 1.0 - exponent_) /
           (spacing * (exponent_ - 1.0));
  }
  const double s = 1.0 / power_;
  const double z = rate_ * std::pow(u0, power_);
  double integral;  // int_{u0}^inf exp(-rate u^power) du
  if (power_ == 1.0) {
    integral = std::exp(-rate_ * u0) / rate_;
  } else if (z == 0.0) {
    integral = s * std::pow(rate_, -s) * std::tgamma(s);
  } else {
    integral = s * std::pow(rate_, -s) * upper_incomplete_gamma(s, z);
  }
  return 2.0 * sup_weighted_ * integral / spacing;
}

std::int64_t DecaySpec::terms_for_tail(double spacing, double offset, double tol,
                                       std::int64_t max_terms) const {
  std::int64_t L = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::abs(offset) / spacing)));
  while (shifted_tail_bound(spacing, offset, L) > tol) {
    if (L >= max_terms) {
      std::ostringstream os;
      os << "tail bound for " << describe() << " cannot reach tol=" << tol << " within "
         << max_terms << " terms (spacing=" << spacing << ")";
      throw NumericalError(os.str());
    }
    L = std::min(max_terms, 2 * L);
  }
  // Refine downward by bisection; the bound is monotone in L.
  std::int64_t lo = L / 2;
  std::int64_t hi = L;
  const double min_l = std::ceil(std::abs(offset) / spacing);
  if (static_cast<double>(lo) < min_l) lo = static_cast<std::int64_t>(min_l);
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (shifted_tail_bound(spacing, offset, mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::string DecaySpec::describe() const {
  std::ostringstream os;
  if (kind_ == DecayKind::Poly) {
    os << "Poly(" << exponent_ << ")";
  } else {
    os << "SubExp(" << rate_ << "," << power_ << ")";
  }
  return os.str();
}

}  // namespace ftdft
