#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ftdft/corpus.hpp"
#include "ftdft/errors.hpp"
#include "ftdft/special.hpp"
#include "ftdft/weights.hpp"
#include "support/oracles.hpp"

using namespace ftdft;

namespace {

std::vector<WeightSpec> sample_weights() {
  return {WeightSpec::polynomial(0.75), WeightSpec::polynomial(1.5), WeightSpec::polynomial(3.0),
          WeightSpec::sub_exponential(1.0, 1.0), WeightSpec::sub_exponential(0.5, 0.5),
          WeightSpec::sub_exponential(2.0, 0.25)};
}

}  // namespace

TEST_CASE("weight_eval basic values") {
  const auto v = WeightSpec::polynomial(1.5);
  CHECK(weight_eval(v, 0.0) == 1.0);
  CHECK(weight_eval(v, 1.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
  CHECK(weight_eval(WeightSpec::sub_exponential(1.0, 1.0), 2.0) ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-15));
}

TEST_CASE("weight parameters are validated at construction") {
  CHECK_THROWS_AS(WeightSpec::polynomial(0.5), ValidationError);
  CHECK_THROWS_AS(WeightSpec::polynomial(-1.0), ValidationError);
  CHECK_THROWS_AS(WeightSpec::sub_exponential(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(WeightSpec::sub_exponential(1.0, 1.5), ValidationError);
  CHECK_THROWS_AS(WeightSpec::sub_exponential(1.0, 0.0), ValidationError);
}

TEST_CASE("weights are even, monotone and submultiplicative on a grid") {
  for (const auto& v : sample_weights()) {
    CAPTURE(v.describe());
    double prev = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double x = 0.1 * i;
      CHECK(v(-x) == v(x));
      CHECK(v(x) >= prev);
      CHECK(v(x) >= 1.0);
      prev = v(x);
    }
    for (int i = -50; i <= 50; i += 3) {
      for (int j = -50; j <= 50; j += 7) {
        const double x = 0.97 * i;
        const double y = 1.03 * j;
        CHECK(v(x + y) <= v(x) * v(y) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("phi of exponential weight matches the geometric series") {
  for (double r : {0.3, 1.0, 2.5}) {
    for (double p : {0.5, 1.0, 3.0, 10.0}) {
      const auto v = WeightSpec::sub_exponential(r, 1.0);
      const double expected = std::sqrt(2.0 * std::exp(-r * p) / (1.0 - std::exp(-2.0 * r * p)));
      CAPTURE(r);
      CAPTURE(p);
      CHECK(std::abs(phi(v, p) - expected) <= 1e-12 * expected + 1e-14);
    }
  }
}

TEST_CASE("phi of polynomial weight against brute force summation") {
  const auto v = WeightSpec::polynomial(1.5);
  const long double head = oracle::phi_sq_half_bruteforce(v, 4.0, 10'000'000);
  // Remainder beyond 10^7 terms is below int_{10^7 - 1}^inf (4t + 3)^{-3} dt.
  const long double rest = std::pow(4.0L * (1e7L - 1.0L) + 3.0L, -2.0L) / 8.0L;
  const double lo = std::sqrt(2.0 * static_cast<double>(head));
  const double hi = std::sqrt(2.0 * static_cast<double>(head + rest));
  const double got = phi(v, 4.0);
  CHECK(got >= lo - 1e-10);
  CHECK(got <= hi + 1e-10);
}

TEST_CASE("phi of polynomial weight stays below the Hurwitz zeta bound") {
  for (double alpha : {0.75, 1.5, 2.5}) {
    const auto v = WeightSpec::polynomial(alpha);
    const double zeta = static_cast<double>(oracle::hurwitz_half_bruteforce(2.0L * alpha, 1'000'000));
    for (double p : {0.5, 1.0, 2.0, 8.0, 64.0}) {
      CAPTURE(alpha);
      CAPTURE(p);
      CHECK(phi(v, p) <= std::pow(p, -alpha) * std::sqrt(2.0 * zeta) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("phi decreases strictly in p") {
  for (const auto& v : sample_weights()) {
    CAPTURE(v.describe());
    const double a = phi(v, 1.0);
    const double b = phi(v, 10.0);
    const double c = phi(v, 100.0);
    CHECK(a > b);
    CHECK(b > c);
  }
}

TEST_CASE("phi_bound closed forms") {
  CHECK(phi_bound(WeightSpec::polynomial(1.5), 1.0) ==
        doctest::Approx(4.0 * std::sqrt(1.25)).epsilon(1e-14));
  CHECK(phi_bound(WeightSpec::polynomial(1.5), 1.0) == doctest::Approx(4.47214).epsilon(1e-5));
  CHECK(phi_bound(WeightSpec::sub_exponential(1.0, 1.0), 2.0) ==
        doctest::Approx(std::exp(-1.0) * std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("phi_bound rejects p below the sub-exponential range") {
  const auto v = WeightSpec::sub_exponential(0.1, 0.5);
  CHECK(sub_exponential_phi_threshold(v) == doctest::Approx(200.0).epsilon(1e-12));
  CHECK_NOTHROW(phi_bound(v, 1.0));
  CHECK_THROWS_WITH_AS(phi_bound(v, 0.5), doctest::Contains("p >= 1"), ValidationError);
}

TEST_CASE("phi never exceeds phi_bound") {
  for (const auto& v : sample_weights()) {
    std::vector<double> ps = {1.0, 1.5, 2.0, 4.0, 10.0, 30.0, 100.0};
    if (v.kind() == WeightKind::Polynomial) ps.insert(ps.begin(), {0.25, 0.5});
    for (double p : ps) {
      CAPTURE(v.describe());
      CAPTURE(p);
      CHECK(phi(v, p) <= phi_bound(v, p) + 1e-14);
    }
  }
}

TEST_CASE("Hurwitz zeta at t = 1/2") {
  CHECK(std::abs(hurwitz_zeta_half(2.0) - std::numbers::pi * std::numbers::pi / 2.0) <= 1e-12);
  for (double s : {1.5, 2.0, 3.0, 4.5}) {
    const double ref = static_cast<double>(oracle::hurwitz_half_bruteforce(s, 10'000'000));
    CAPTURE(s);
    CHECK(std::abs(hurwitz_zeta_half(s) - ref) <= 1e-10);
  }
  for (double s : {40.0, 80.0}) CHECK(hurwitz_zeta_half(s) / std::pow(2.0, s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hurwitz_zeta_half(1.0), ValidationError);
  CHECK_THROWS_AS(hurwitz_zeta_half(0.5), ValidationError);
}

TEST_CASE("upper incomplete Gamma against closed forms") {
  for (double x : {0.1, 1.0, 3.0, 12.0}) {
    CAPTURE(x);
    CHECK(upper_incomplete_gamma(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(2.0, x) == doctest::Approx((1.0 + x) * std::exp(-x)).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(0.5, x) ==
          doctest::Approx(std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x))).epsilon(1e-10));
  }
  for (double s : {1.0, 2.0, 4.0}) {
    for (double x : {s, 2.0 * s, 10.0 * s}) {
      CHECK(upper_incomplete_gamma(s, x) <= upper_incomplete_gamma_bound(s, x) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("amalgam norm of compactly supported splines") {
  for (double alpha : {0.75, 1.0, 2.0}) {
    const auto v = WeightSpec::polynomial(alpha);
    const ScalarFunction tri = [](double x) { return std::complex<double>(oracle::b2(x), 0.0); };
    const auto est = amalgam_norm(tri, v, DecaySpec::poly(6.0, 64.0));
    CAPTURE(alpha);
    CHECK(est.value == doctest::Approx(std::sqrt(1.0 + std::pow(4.0, alpha))).epsilon(1e-14));
    CHECK(est.truncation_tail_bound <= 1e-6);
    CHECK(est.upper() >= est.value);
  }
  const ScalarFunction box = [](double x) { return std::complex<double>(bspline_eval(1, x), 0.0); };
  const auto est = amalgam_norm(box, WeightSpec::polynomial(1.0), DecaySpec::poly(6.0, 12.0));
  CHECK(est.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("amalgam norm of the zero function") {
  const auto z = zero_pair();
  const auto est = amalgam_norm(z.f, WeightSpec::polynomial(1.0), z.time_decay);
  CHECK(est.value == 0.0);
  CHECK(est.truncation_tail_bound == 0.0);
}

TEST_CASE("amalgam norm upper estimate covers a known norm") {
  // f(x) = e^{-|x|}: cell sups are e^{-l} (l >= 0) and e^{-(|l|-1)} (l < 0).
  const ScalarFunction f = [](double x) { return std::complex<double>(std::exp(-std::abs(x)), 0.0); };
  const auto v = WeightSpec::sub_exponential(0.5, 1.0);
  long double sq = 0;
  for (int l = 400; l >= 0; --l) {
    sq += std::exp(-2.0L * l) * std::exp(2.0L * 0.5L * l);
    sq += std::exp(-2.0L * l) * std::exp(2.0L * 0.5L * (l + 1));
  }
  const double exact = std::sqrt(static_cast<double>(sq));
  const auto est = amalgam_norm(f, v, DecaySpec::sub_exp(1.0, 1.0, 1.0));
  CHECK(est.value <= exact * (1.0 + 1e-12));
  CHECK(est.value >= exact * (1.0 - 1e-12));
  CHECK(est.upper() >= exact);
}

TEST_CASE("amalgam norm reports divergent weight/decay pairs") {
  const auto f = corpus_get("fab:2,2");
  CHECK_THROWS_WITH_AS(amalgam_norm(f.f, WeightSpec::polynomial(1.6), f.time_decay),
                       doctest::Contains("Polynomial(alpha=1.6)"), ValidationError);
  CHECK_THROWS_AS(amalgam_norm(f.f, WeightSpec::sub_exponential(1.0, 1.0), f.time_decay),
                  ValidationError);
}
