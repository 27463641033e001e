#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ftdft/decay.hpp"
#include "ftdft/weights.hpp"

namespace ftdft {

/// A function together with its Fourier transform
/// fhat(xi) = int f(x) e^{-2 pi i x xi} dx and declared decay of both.
struct FunctionPair {
  ScalarFunction f;
  ScalarFunction fhat;
  DecaySpec time_decay;
  DecaySpec freq_decay;
  std::string label;
};

/// sin(pi x), exact zero at integers.
double sin_pi(double x);

/// sin(pi x) / (pi x) with sinc(0) = 1; a short series is used for
/// |pi x| < 1e-4.
double sinc(double x);

/// Centered cardinal B-spline of order b (1 <= b <= 8), supported on
/// [-b/2, b/2]. B_1 is the indicator of [-1/2, 1/2).
double bspline_eval(int b, double x);

/// The 1-periodic Fourier series u_a(xi) = sum_k c_k^a e^{-2 pi i k xi}
/// in closed form for a in {1, 2, 3}.
double u_eval(int a, double xi);

/// c_k^a with c_0 = 1/2, c_k = 1/(k pi i) for odd k and 0 otherwise.
std::complex<double> fab_coefficient(int a, long k);

/// f^{a,b}(x) = sum_k c_k^a B_b(x - k), summing only the shifts that
/// overlap x. 1 <= a <= 3, 1 <= b <= 8.
std::complex<double> fab_eval(int a, int b, double x);

/// Fourier transform sinc(xi)^b u_a(xi).
std::complex<double> fab_hat_eval(int a, int b, double xi);

/// Upper bound on sup_xi |sinc(xi)| (1 + |xi|).
inline constexpr double kSincWeightedSup = 1.13;

/// Resolves a corpus name: "fab:a,b" (a in {2,3}, 2 <= b <= 8), "exp_abs"
/// (e^{-2 pi |x|}), or "gauss" (e^{-pi x^2}). Throws ValidationError for
/// unknown names or out-of-range parameters.
FunctionPair corpus_get(const std::string& name);

/// Names used for corpus-wide checks: the six f^{a,b} pairs
/// with a in {2,3}, b in {2,3,4}, then exp_abs and gauss.
std::vector<std::string> corpus_names();

/// The zero function with trivial decay metadata, for degenerate checks.
FunctionPair zero_pair();

}  // namespace ftdft
