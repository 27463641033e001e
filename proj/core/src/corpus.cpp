#include "ftdft/corpus.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <string>

#include "ftdft/errors.hpp"

namespace ftdft {

using std::numbers::pi;

double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double frac = x - n;
  const double s = std::sin(pi * frac);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double sinc(double x) {
  const double px = pi * x;
  if (std::abs(px) < 1e-4) {
    const double px2 = px * px;
    return 1.0 - px2 / 6.0 + px2 * px2 / 120.0;
  }
  return sin_pi(x) / px;
}

namespace {

void check_order(int b) {
  if (b < 1 || b > 8) {
    throw ValidationError("bspline_eval: order must be in [1, 8], got " + std::to_string(b));
  }
}

void check_decay_index(int a) {
  if (a < 1 || a > 3) {
    throw ValidationError("u_eval: closed form only for a in {1,2,3}, got " + std::to_string(a));
  }
}

double bspline_recursive(int b, double x) {
  const double ax = std::abs(x);
  switch (b) {
    case 1:
      return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
    case 2:
      return ax < 1.0 ? 1.0 - ax : 0.0;
    case 3:
      if (ax <= 0.5) return 0.75 - ax * ax;
      if (ax < 1.5) return 0.5 * (1.5 - ax) * (1.5 - ax);
      return 0.0;
    case 4:
      if (ax <= 1.0) return 2.0 / 3.0 - ax * ax + 0.5 * ax * ax * ax;
      if (ax < 2.0) return (2.0 - ax) * (2.0 - ax) * (2.0 - ax) / 6.0;
      return 0.0;
    default: {
      const double half = 0.5 * b;
      if (ax >= half) return 0.0;
      return ((half + x) * bspline_recursive(b - 1, x + 0.5) +
              (half - x) * bspline_recursive(b - 1, x - 0.5)) /
             (b - 1);
    }
  }
}

}  // namespace

double bspline_eval(int b, double x) {
  check_order(b);
  return bspline_recursive(b, x);
}

double u_eval(int a, double xi) {
  check_decay_index(a);
  const double t = xi - std::floor(xi + 0.5);  // t in [-1/2, 1/2)
  switch (a) {
    case 1:
      if (t == -0.5 || t == 0.0) return 0.5;
      return t < 0.0 ? 1.0 : 0.0;
    case 2:
      return std::abs(t);
    default: {
      // Cyclic convolution of u_2 with u_1: the integral of |eta| over
      // [t, t + 1/2]. The often-quoted sign(t) t^2 - t/2 + 1/8 is this
      // function reflected, u_3(-t).
      const double sgn = (t > 0.0) - (t < 0.0);
      return -sgn * t * t + 0.5 * t + 0.125;
    }
  }
}

std::complex<double> fab_coefficient(int a, long k) {
  check_decay_index(a);
  if (k == 0) return std::pow(0.5, a);
  if (k % 2 == 0) return 0.0;
  // (1/(k pi i))^a = (-i)^a / (k pi)^a
  static constexpr std::complex<double> kMinusIPowers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kMinusIPowers[a % 4] / std::pow(static_cast<double>(k) * pi, a);
}

std::complex<double> fab_eval(int a, int b, double x) {
  check_decay_index(a);
  check_order(b);
  const double half = 0.5 * b;
  const long k_lo = static_cast<long>(std::ceil(x - half));
  const long k_hi = static_cast<long>(std::floor(x + half));
  std::complex<double> sum = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double basis = bspline_recursive(b, x - static_cast<double>(k));
    if (basis != 0.0) sum += fab_coefficient(a, k) * basis;
  }
  return sum;
}

std::complex<double> fab_hat_eval(int a, int b, double xi) {
  check_decay_index(a);
  check_order(b);
  return std::pow(sinc(xi), b) * u_eval(a, xi);
}

namespace {

// Largest |u_a| on a period.
double u_sup(int a) {
  switch (a) {
    case 1:
      return 1.0;
    case 2:
      return 0.5;
    default:
      return 3.0 / 16.0;
  }
}

FunctionPair make_fab(int a, int b) {
  if (a < 2 || a > 3) {
    throw ValidationError("corpus fab:a,b needs a in {2,3} (a=1 is not integrable), got a=" +
                          std::to_string(a));
  }
  if (b < 2 || b > 8) {
    throw ValidationError("corpus fab:a,b needs 2 <= b <= 8 (continuity), got b=" +
                          std::to_string(b));
  }
  // |f(x)| is a convex combination of |c_k|^a over shifts with |x-k| < b/2,
  // which gives (1+|x|)^a |f(x)| <= max(((2+b)/4)^a, ((4+b)/(2 pi))^a).
  const double time_sup =
      std::max(std::pow((2.0 + b) / 4.0, a), std::pow((4.0 + b) / (2.0 * pi), a));
  const double freq_sup = u_sup(a) * std::pow(kSincWeightedSup, b);
  return FunctionPair{
      [a, b](double x) { return fab_eval(a, b, x); },
      [a, b](double xi) { return fab_hat_eval(a, b, xi); },
      DecaySpec::poly(a, time_sup),
      DecaySpec::poly(b, freq_sup),
      "fab:" + std::to_string(a) + "," + std::to_string(b),
  };
}

}  // namespace

FunctionPair corpus_get(const std::string& name) {
  static const std::regex kFab(R"(fab:(\d+),(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, kFab)) {
    return make_fab(std::stoi(m[1].str()), std::stoi(m[2].str()));
  }
  if (name == "exp_abs") {
    // (1+|xi|)^2 / (pi (1 + xi^2)) <= 2 / pi
    return FunctionPair{
        [](double x) { return std::complex<double>(std::exp(-2.0 * pi * std::abs(x))); },
        [](double xi) { return std::complex<double>(1.0 / (pi * (1.0 + xi * xi))); },
        DecaySpec::sub_exp(2.0 * pi, 1.0, 1.0),
        DecaySpec::poly(2.0, 2.0 / pi),
        "exp_abs",
    };
  }
  if (name == "gauss") {
    // exp(-pi x^2 + pi |x|) peaks at |x| = 1/2
    const auto g = [](double x) { return std::complex<double>(std::exp(-pi * x * x)); };
    const DecaySpec d = DecaySpec::sub_exp(pi, 1.0, std::exp(pi / 4.0));
    return FunctionPair{g, g, d, d, "gauss"};
  }
  throw ValidationError("unknown corpus function '" + name +
                        "' (expected fab:a,b, exp_abs or gauss)");
}

std::vector<std::string> corpus_names() {
  return {"fab:2,2", "fab:2,3", "fab:2,4", "fab:3,2", "fab:3,3", "fab:3,4", "exp_abs", "gauss"};
}

FunctionPair zero_pair() {
  const auto z = [](double) { return std::complex<double>(0.0); };
  return FunctionPair{z, z, DecaySpec::sub_exp(1.0, 1.0, 0.0), DecaySpec::sub_exp(1.0, 1.0, 0.0),
                      "zero"};
}

}  // namespace ftdft
