#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ftdft/corpus.hpp"
#include "ftdft/errors.hpp"
#include "ftdft/harness.hpp"
#include "ftdft/interp.hpp"
#include "support/oracles.hpp"

using namespace ftdft;
using cplx = std::complex<double>;

TEST_CASE("kernels satisfy the interpolation condition") {
  for (Kernel k : {Kernel::Sinc, Kernel::B1, Kernel::B2}) {
    for (int m = -6; m <= 6; ++m) CHECK(kernel_eval(k, m) == (m == 0 ? 1.0 : 0.0));
  }
  CHECK(parse_kernel("SINC") == Kernel::Sinc);
  CHECK(parse_kernel("b2") == Kernel::B2);
  CHECK_THROWS_AS(parse_kernel("b3"), ValidationError);
}

TEST_CASE("interpolant reproduces node values") {
  const auto fp = corpus_get("fab:3,3");
  const auto plan = plan_for(fp, {}, 256);
  for (Kernel k : {Kernel::Sinc, Kernel::B1, Kernel::B2}) {
    const auto itp = Interpolant::from_dft(fp, plan, k);
    for (long j = index_min(256); j <= index_max(256); ++j) {
      const cplx expected = std::sqrt(plan.p()) * itp.coeffs().at(j);
      const cplx got = interp_eval(itp, static_cast<double>(j) / plan.p());
      CAPTURE(kernel_name(k));
      CAPTURE(j);
      CHECK(std::abs(got - expected) <= 1e-12 * std::max(std::abs(expected), 1e-3));
    }
  }
}

TEST_CASE("zero coefficients give the zero interpolant") {
  const SampledVector zero(std::vector<cplx>(32, 0.0));
  for (Kernel k : {Kernel::Sinc, Kernel::B1, Kernel::B2}) {
    const Interpolant itp(zero, 4.0, k);
    for (double xi = -6.0; xi <= 6.0; xi += 0.37) CHECK(interp_eval(itp, xi) == cplx(0.0));
  }
}

TEST_CASE("B2 interpolant is linear between nodes") {
  const SampledVector c(oracle::random_vector(16, 3));
  const double p = 2.5;
  const Interpolant itp(c, p, Kernel::B2);
  for (long k = index_min(16); k < index_max(16); ++k) {
    const cplx mid = interp_eval(itp, (k + 0.5) / p);
    const cplx expected = 0.5 * std::sqrt(p) * (c.at(k) + c.at(k + 1));
    CHECK(std::abs(mid - expected) <= 1e-14 * std::abs(expected));
  }
}

TEST_CASE("constant node data gives a constant interpolant on the covered window") {
  const std::size_t n = 64;
  const double p = 8.0;
  for (Kernel k : {Kernel::B1, Kernel::B2}) {
    const Interpolant itp(SampledVector(std::vector<cplx>(n, 1.0)), p, k);
    const double lo = static_cast<double>(index_min(n)) / p;
    const double hi = static_cast<double>(index_max(n)) / p;
    for (double xi = lo; xi <= hi; xi += 0.0191) {
      CHECK(std::abs(interp_eval(itp, xi) - std::sqrt(p)) <= 1e-14);
    }
  }
}

TEST_CASE("sinc interpolant matches a direct sum") {
  const std::size_t n = 32;
  const SampledVector c(oracle::random_vector(n, 11));
  const double p = 3.0;
  const Interpolant itp(c, p, Kernel::Sinc);
  for (double xi : {-7.0, -1.234, 0.01, 0.3333, 2.5, 9.9}) {
    cplx acc = 0.0;
    for (long k = index_min(n); k <= index_max(n); ++k) {
      const double t = p * xi - k;
      const double pt = static_cast<double>(oracle::kPi) * t;
      acc += c.at(k) * (t == 0.0 ? 1.0 : std::sin(pt) / pt);
    }
    CHECK(std::abs(interp_eval(itp, xi) - std::sqrt(p) * acc) <= 1e-12);
  }
}

namespace {

// Gram matrix of {sqrt(p) phi(p x - k)}, |k| <= K, by knot-aligned Simpson.
Eigen::MatrixXd gram(Kernel kernel, double p, int K, double span, std::size_t panels_per_unit) {
  const int m = 2 * K + 1;
  Eigen::MatrixXd G(m, m);
  const double off = kernel == Kernel::B1 ? 0.5 : 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const int ki = i - K;
      const int kj = j - K;
      double acc = 0.0;
      for (double t = -span + off; t < span + off - 1e-12; t += 1.0) {
        acc += oracle::simpson(
            [&](double u) { return kernel_eval(kernel, u - ki) * kernel_eval(kernel, u - kj); }, t,
            t + 1.0, panels_per_unit);
      }
      // With x = u / p the p factors cancel.
      G(i, j) = G(j, i) = acc;
    }
  }
  return G;
}

}  // namespace

TEST_CASE("B2 shifts form a Riesz sequence with bounds 1/3 and 1") {
  const auto G = gram(Kernel::B2, 4.0, 32, 40.0, 8);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  CHECK(es.eigenvalues().minCoeff() >= 1.0 / 3.0 - 1e-6);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-6);
}

TEST_CASE("B1 shifts are orthonormal") {
  const auto G = gram(Kernel::B1, 2.0, 8, 12.0, 4);
  CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("sinc shifts are orthonormal") {
  // int sinc(u - a) sinc(u - b) du = delta_{ab}; evaluate in closed form
  // on the frequency side: the transform of sinc(u - a) is e^{-2 pi i a xi}
  // on [-1/2, 1/2].
  const int K = 8;
  Eigen::MatrixXd G(2 * K + 1, 2 * K + 1);
  for (int a = -K; a <= K; ++a) {
    for (int b = -K; b <= K; ++b) {
      const auto re = oracle::simpson(
          [&](double xi) { return std::cos(2.0 * oracle::kPi * (a - b) * xi); }, -0.5, 0.5, 2000);
      G(a + K, b + K) = static_cast<double>(re);
    }
  }
  CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() <= 1e-10);
  // The kernel itself agrees with its inverse transform.
  for (double u : {0.3, 1.7, -4.2}) {
    const double v = oracle::simpson([&](double xi) { return std::cos(2.0 * oracle::kPi * u * xi); },
                                     -0.5, 0.5, 2000);
    CHECK(std::abs(kernel_eval(Kernel::Sinc, u) - v) <= 1e-10);
  }
}

TEST_CASE("L2 interpolation error of the zero function") {
  const auto z = zero_pair();
  for (Kernel k : {Kernel::Sinc, Kernel::B1, Kernel::B2}) {
    const auto r = interp_l2_error(z, SamplingPlan::from_step(64, 0.25), k);
    CHECK(r.main == 0.0);
    CHECK(r.tail_bound == 0.0);
  }
}

TEST_CASE("L2 interpolation error follows the decomposition") {
  // For sinc, ||fhat - Phi|| splits into the aliasing of the samples
  // (bounded by E times the orthonormal-shift isometry) and the part of
  // fhat not captured by a bandlimited series with nodes k/p.
  const auto fp = corpus_get("fab:3,3");
  const auto plan = plan_for(fp, {}, 1024);
  const auto r = interp_l2_error(fp, plan, Kernel::Sinc);
  const double E = error_l2(fp, plan).e_l2;
  // Second term: sinc reconstruction of the exact samples fhat(k/p),
  // measured on the same window.
  const auto exact = sample(fp, Side::Frequency, plan);
  const Interpolant ideal(exact, plan.p(), Kernel::Sinc);
  double sq = 0.0;
  const double W = r.window;
  const std::size_t cells = static_cast<std::size_t>(std::ceil(2.0 * W * plan.p()));
  for (std::size_t c = 0; c < cells; ++c) {
    const double lo = -W + c / plan.p();
    sq += oracle::simpson(
        [&](double xi) { return std::norm(fp.fhat(xi) - interp_eval(ideal, xi)); }, lo,
        lo + 1.0 / plan.p(), 16);
  }
  const double s2 = std::sqrt(sq);
  CHECK(r.main <= 3.0 * (E + s2 + r.tail_bound));
  CHECK(r.main >= (E - s2) / 3.0);
}

TEST_CASE("L2 interpolation warnings flag kernels past their range") {
  const auto fp = corpus_get("fab:3,3");
  const auto plan = plan_for(fp, {}, 256);
  CHECK(interp_l2_error(fp, plan, Kernel::B1).warnings.size() == 1);
  CHECK(interp_l2_error(fp, plan, Kernel::B2).warnings.size() == 1);
  CHECK(interp_l2_error(fp, plan, Kernel::Sinc).warnings.empty());
  CHECK(interp_l2_error(corpus_get("fab:3,2"), plan, Kernel::B2).warnings.empty());
}

TEST_CASE("L2 quadrature check rejects too few points") {
  const auto fp = corpus_get("exp_abs");
  InterpQuadrature q;
  q.points_per_cell = 2;
  q.richardson_rtol = 1e-12;
  CHECK_THROWS_WITH_AS(interp_l2_error(fp, SamplingPlan::from_step(64, 0.25), Kernel::Sinc, q),
                       doctest::Contains("increase points_per_cell"), NumericalError);
  q.points_per_cell = 3;
  CHECK_THROWS_AS(interp_l2_error(fp, SamplingPlan::from_step(64, 0.25), Kernel::Sinc, q),
                  ValidationError);
}

TEST_CASE("sup interpolation error") {
  const auto z = zero_pair();
  const std::vector<double> grid = {-1.0, 0.0, 0.3, 2.0};
  CHECK(interp_sup_error(z, SamplingPlan::from_step(64, 0.25), Kernel::B2, grid).value == 0.0);
  const auto fp = corpus_get("exp_abs");
  const auto plan = SamplingPlan::from_step(256, 1.0 / 16.0);
  CHECK_THROWS_AS(interp_sup_error(fp, plan, Kernel::B2, {}), ValidationError);
  CHECK_THROWS_AS(interp_sup_error(fp, plan, Kernel::Sinc, grid), ValidationError);
  CHECK_THROWS_AS(interp_sup_error(fp, plan, Kernel::B1, {1e6}), ValidationError);

  // At a node the deviation is the pointwise DFT error.
  const auto approx = dft_unitary(sample(fp, Side::Time, plan));
  for (long k : {-5L, 0L, 17L}) {
    const double xi = k / plan.p();
    const double dft_err = std::abs(fp.fhat(xi) - std::sqrt(plan.p()) * approx.at(k));
    for (Kernel ker : {Kernel::B1, Kernel::B2}) {
      const auto s = interp_sup_error(fp, plan, ker, {xi});
      CHECK(s.points_used == 1);
      CHECK(s.value == doctest::Approx(dft_err).epsilon(1e-12));
    }
  }
}

TEST_CASE("B2 sup error decreases when h shrinks and p grows") {
  const auto fp = corpus_get("exp_abs");
  std::vector<double> grid;
  for (int i = -4000; i <= 4000; ++i) grid.push_back(i * 0.00123);
  double prev = INFINITY;
  for (int l = 6; l <= 16; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const auto plan = SamplingPlan::from_step(n, std::pow(static_cast<double>(n), -0.5));
    const double e = interp_sup_error(fp, plan, Kernel::B2, grid).value;
    CAPTURE(n);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("B2 sup error stalls when p stays fixed") {
  // h = 10/n keeps p = 10: node spacing 1/10 never shrinks, so the error
  // levels off at the piecewise-linear interpolation error of fhat.
  const auto fp = corpus_get("exp_abs");
  std::vector<double> grid;
  for (int i = -4000; i <= 4000; ++i) grid.push_back(i * 0.00123);
  const auto at = [&](std::size_t n) {
    return interp_sup_error(fp, SamplingPlan::from_step(n, 10.0 / n), Kernel::B2, grid).value;
  };
  const double e14 = at(1 << 14);
  const double e16 = at(1 << 16);
  CHECK(e14 > 5e-4);
  CHECK(std::abs(e16 - e14) <= 0.01 * e14);
}
