#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace ftdft::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes are computed by Newton iteration on P_n; accurate to a few ulps.
GaussLegendreRule gauss_legendre(std::size_t points);

/// Composite rule over `cells` equal subintervals of [a, b]. Works for any
/// integrand whose value type supports `+` and scalar `*` (double, complex).
template <class F>
auto composite_gauss_legendre(F&& f, double a, double b, std::size_t cells,
                              const GaussLegendreRule& rule) {
  using Value = decltype(f(a));
  Value total{};
  const double width = (b - a) / static_cast<double>(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double lo = a + width * static_cast<double>(c);
    const double mid = lo + 0.5 * width;
    Value cell{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      cell += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * cell;
  }
  return total;
}

/// Adaptive Simpson quadrature of a real integrand on [a, b].
/// Throws NumericalError if the recursion depth is exhausted before the
/// local error estimate drops below max(abs_tol, rel_tol * |I|).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol = 1e-13, int max_depth = 48);

/// Integral of f over [a, inf) by the substitution t = a + u / (1 - u).
/// f must decay fast enough for the mapped integrand to vanish at u = 1.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol, double rel_tol = 1e-13);

}  // namespace ftdft::quad
