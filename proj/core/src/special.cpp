#include "ftdft/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ftdft/errors.hpp"
#include "ftdft/quadrature.hpp"

namespace ftdft {

namespace {

// B_{2j} / (2j)! for j = 1..8.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

}  // namespace

double hurwitz_zeta(double s, double t) {
  if (!(s > 1.0)) {
    throw ValidationError("hurwitz_zeta: s must exceed 1 (series diverges), got s=" +
                          std::to_string(s));
  }
  if (!(t > 0.0)) throw ValidationError("hurwitz_zeta: t must be positive");

  // The correction series behaves like (s / (2 pi (N + t)))^{2j}; keep N
  // comfortably above s.
  const int terms = std::max(32, static_cast<int>(std::ceil(s)) + 16);
  double partial = 0.0;
  for (int m = terms - 1; m >= 0; --m) partial += std::pow(m + t, -s);

  const double x = terms + t;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // rising(s, 2j - 1) * x^{-s-2j+1}
  double rising = s;
  double power = std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    tail += kBernoulliOverFactorial[j] * rising * power;
    rising *= (s + 2.0 * static_cast<double>(j) + 1.0) * (s + 2.0 * static_cast<double>(j) + 2.0);
    power /= x * x;
  }
  return partial + tail;
}

double hurwitz_zeta_half(double s) { return hurwitz_zeta(s, 0.5); }

double upper_incomplete_gamma_scaled(double s, double x) {
  if (!(s > 0.0) || !(x > 0.0)) {
    throw ValidationError("upper_incomplete_gamma: need s > 0 and x > 0");
  }
  if (s == 1.0) return 1.0;
  const auto integrand = [s, x](double u) { return std::pow(x + u, s - 1.0) * std::exp(-u); };
  // The integrand is at most max(x^{s-1}, (x+s-1)^{s-1}) near its peak;
  // scale the absolute tolerance accordingly.
  const double scale = std::pow(x + std::max(s - 1.0, 0.0), s - 1.0) + std::pow(x, s - 1.0);
  return quad::integrate_to_infinity(integrand, 0.0, 1e-15 * scale, 1e-14);
}

double upper_incomplete_gamma(double s, double x) {
  return std::exp(-x) * upper_incomplete_gamma_scaled(s, x);
}

double upper_incomplete_gamma_bound(double s, double x) {
  return s * std::pow(x, s - 1.0) * std::exp(-x);
}

}  // namespace ftdft
