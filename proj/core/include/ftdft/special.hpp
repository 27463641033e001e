#pragma once

namespace ftdft {

/// Hurwitz zeta function zeta(s, t) = sum_{m >= 0} (m + t)^{-s} for s > 1,
/// t > 0. Partial summation followed by the integral tail and its
/// Euler-Maclaurin boundary corrections; absolute error well below 1e-12
/// for the magnitudes used here.
double hurwitz_zeta(double s, double t);

/// zeta(s, 1/2). Rejects s <= 1 (divergent series).
double hurwitz_zeta_half(double s);

/// e^x * Gamma(s, x), the scaled upper incomplete Gamma function, by
/// adaptive quadrature of int_0^inf (x + u)^{s-1} e^{-u} du. Requires
/// s > 0 and x > 0.
double upper_incomplete_gamma_scaled(double s, double x);

/// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt.
double upper_incomplete_gamma(double s, double x);

/// Closed upper estimate Gamma(s, x) <= s x^{s-1} e^{-x}, valid for
/// x >= s >= 1. Used as a sanity check on the quadrature value.
double upper_incomplete_gamma_bound(double s, double x);

}  // namespace ftdft
