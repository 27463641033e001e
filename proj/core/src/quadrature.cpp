#include "ftdft/quadrature.hpp"

#include <numbers>
#include <utility>
#include <stdexcept>
#include <string>

#include "ftdft/errors.hpp"

namespace ftdft::quad {

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const auto kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

GaussLegendreRule gauss_legendre(std::size_t points) {
  if (points == 0) throw ValidationError("gauss_legendre: need at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const auto n = static_cast<double>(points);
  for (std::size_t i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(points, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double rel_tol;
  int max_depth;
};

double simpson_recurse(const SimpsonState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= st.rel_tol * std::abs(left + right)) {
    return left + right + delta / 15.0;
  }
  if (depth >= st.max_depth) {
    throw NumericalError("adaptive_simpson: recursion depth exhausted near x=" +
                         std::to_string(m));
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const SimpsonState st{f, rel_tol, max_depth};
  // Seed with a few panels so that narrow features are not missed by the
  // first five-point estimate.
  constexpr int kPanels = 16;
  double total = 0.0;
  const double width = (b - a) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + width * i;
    const double hi = (i + 1 == kPanels) ? b : lo + width;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_recurse(st, lo, hi, fa, fm, fb, whole, abs_tol / kPanels, 0);
  }
  return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol, double rel_tol) {
  const std::function<double(double)> mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double t = a + u / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  return adaptive_simpson(mapped, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace ftdft::quad
