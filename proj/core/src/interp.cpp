#include "ftdft/interp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ftdft/errors.hpp"
#include "ftdft/quadrature.hpp"
#include "ftdft/special.hpp"

namespace ftdft {

namespace {

using cplx = std::complex<double>;

// int_{|xi| > W} envelope(xi)^2 dxi.
double exterior_energy(const DecaySpec& d, double W) {
  const double S = d.sup_weighted();
  if (S == 0.0) return 0.0;
  if (d.kind() == DecayKind::Poly) {
    const double b = d.exponent();
    return 2.0 * S * S * std::pow(1.0 + W, 1.0 - 2.0 * b) / (2.0 * b - 1.0);
  }
  const double r2 = 2.0 * d.rate();
  const double a = d.power();
  const double z = r2 * std::pow(W, a);
  if (z > 700.0) return 0.0;
  if (a == 1.0) return 2.0 * S * S * std::exp(-z) / r2;
  return 2.0 * S * S * std::pow(r2, -1.0 / a) * upper_incomplete_gamma(1.0 / a, z) / a;
}

// Integral of |fhat - Phi|^2 and of |Phi|^2 over the sorted breakpoints.
struct Integrals {
  double err_sq = 0.0;
  double interp_sq = 0.0;
};

Integrals integrate(const FunctionPair& fp, const Interpolant& itp,
                    const std::vector<double>& breaks, const quad::GaussLegendreRule& rule) {
  Integrals out;
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    const double lo = breaks[c];
    const double hi = breaks[c + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double e = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double xi = mid + half * rule.nodes[i];
      const cplx phi = interp_eval(itp, xi);
      e += rule.weights[i] * std::norm(fp.fhat(xi) - phi);
      s += rule.weights[i] * std::norm(phi);
    }
    out.err_sq += half * e;
    out.interp_sq += half * s;
  }
  return out;
}

}  // namespace

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Sinc:
      return "sinc";
    case Kernel::B1:
      return "b1";
    case Kernel::B2:
      return "b2";
  }
  return "?";
}

Kernel parse_kernel(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "sinc") return Kernel::Sinc;
  if (s == "b1") return Kernel::B1;
  if (s == "b2") return Kernel::B2;
  throw ValidationError("unknown kernel '" + name + "' (expected sinc, b1 or b2)");
}

double kernel_eval(Kernel k, double t) {
  switch (k) {
    case Kernel::Sinc:
      return sinc(t);
    case Kernel::B1:
      return bspline_eval(1, t);
    case Kernel::B2:
      return bspline_eval(2, t);
  }
  return 0.0;
}

Interpolant::Interpolant(SampledVector coeffs, double p, Kernel kernel)
    : coeffs_(std::move(coeffs)), p_(p), kernel_(kernel) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("Interpolant: p must be positive");
}

Interpolant Interpolant::from_dft(const FunctionPair& fp, const SamplingPlan& plan,
                                  Kernel kernel, const TransformOptions& opts) {
  return Interpolant(dft_unitary(sample(fp, Side::Time, plan), opts), plan.p(), kernel);
}

std::complex<double> interp_eval(const Interpolant& itp, double xi) {
  const std::size_t n = itp.coeffs().size();
  const long kmin = index_min(n);
  const long kmax = index_max(n);
  const double t = itp.p() * xi;
  const double scale = std::sqrt(itp.p());
  auto in_range = [&](double k) {
    return k >= static_cast<double>(kmin) && k <= static_cast<double>(kmax);
  };

  switch (itp.kernel()) {
    case Kernel::B1: {
      const double k = std::floor(t + 0.5);
      if (!in_range(k)) return {0.0, 0.0};
      return scale * itp.coeffs().at(static_cast<long>(k));
    }
    case Kernel::B2: {
      const double k0 = std::floor(t);
      const double frac = t - k0;
      cplx acc{0.0, 0.0};
      if (in_range(k0)) acc += (1.0 - frac) * itp.coeffs().at(static_cast<long>(k0));
      if (in_range(k0 + 1.0) && frac > 0.0) {
        acc += frac * itp.coeffs().at(static_cast<long>(k0) + 1);
      }
      return scale * acc;
    }
    case Kernel::Sinc: {
      // sin(pi (t - k)) = (-1)^{k - k*} sin(pi d*) with k* the nearest
      // integer and d* = t - k* exact, so no large-argument sine is needed.
      const double kstar = std::nearbyint(t);
      const double dstar = t - kstar;
      const double sd = sin_pi(dstar) / std::numbers::pi;
      const bool kstar_odd = std::fmod(kstar, 2.0) != 0.0;
      cplx acc{0.0, 0.0};
      const std::vector<cplx>& c = itp.coeffs().physical();
      for (std::size_t m = 0; m < n; ++m) {
        const long k = logical_index(m, n);
        const double d = t - static_cast<double>(k);
        double phi;
        if (static_cast<double>(k) == kstar) {
          phi = sinc(dstar);
        } else {
          const bool odd = ((k & 1) != 0) != kstar_odd;
          phi = (odd ? -sd : sd) / d;
        }
        acc += phi * c[m];
      }
      return scale * acc;
    }
  }
  return {0.0, 0.0};
}

InterpL2Error interp_l2_error(const FunctionPair& fp, const SamplingPlan& plan, Kernel kernel,
                              const InterpQuadrature& quad) {
  if (quad.points_per_cell < 2 || quad.points_per_cell % 2 != 0) {
    throw ValidationError("interp_l2_error: points_per_cell must be even and >= 2");
  }
  if (quad.window_cells < 1) throw ValidationError("interp_l2_error: window_cells must be >= 1");

  InterpL2Error out;
  if (fp.freq_decay.kind() == DecayKind::Poly && kernel != Kernel::Sinc) {
    const double beta = fp.freq_decay.exponent() - 0.5;
    const double cap = kernel == Kernel::B1 ? 1.0 : 2.0;
    if (beta > cap) {
      std::ostringstream os;
      os << kernel_name(kernel) << " kernel: frequency weight exponent " << beta
         << " exceeds " << cap << "; the rate saturates";
      out.warnings.push_back(os.str());
    }
  }

  const Interpolant itp = Interpolant::from_dft(fp, plan, kernel);
  const double p = plan.p();
  const std::size_t n = plan.n();

  // Cells of width 1/p aligned with the kernel's breakpoints (integers in
  // t = p xi, half-integers for B1), refined at the half-integers in xi
  // where the corpus transforms may have kinks.
  const double offset = kernel == Kernel::B1 ? 0.5 : 0.0;
  const long half_cells = static_cast<long>(n / 2) + quad.window_cells;
  std::vector<double> breaks;
  breaks.reserve(2 * static_cast<std::size_t>(half_cells) + 2);
  for (long m = -half_cells; m <= half_cells; ++m) {
    breaks.push_back((static_cast<double>(m) + offset) / p);
  }
  const double lo = breaks.front();
  const double hi = breaks.back();
  for (double x = std::ceil(2.0 * lo) / 2.0; x < hi; x += 0.5) {
    if (x > lo) breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto fine = quad::gauss_legendre(static_cast<std::size_t>(quad.points_per_cell));
  const auto coarse = quad::gauss_legendre(static_cast<std::size_t>(quad.points_per_cell / 2));
  const Integrals I = integrate(fp, itp, breaks, fine);
  const Integrals Ic = integrate(fp, itp, breaks, coarse);

  const double floor_sq = quad.abs_floor * quad.abs_floor;
  if (std::abs(I.err_sq - Ic.err_sq) > quad.richardson_rtol * I.err_sq + floor_sq) {
    std::ostringstream os;
    os << "interp_l2_error: quadrature with " << quad.points_per_cell << " and "
       << quad.points_per_cell / 2 << " points per cell disagree (" << I.err_sq << " vs "
       << Ic.err_sq << ") at n=" << n << ", p=" << p << "; increase points_per_cell";
    throw NumericalError(os.str());
  }

  out.main = std::sqrt(std::max(0.0, I.err_sq));
  out.window = std::max(-lo, hi);

  double interp_ext_sq = 0.0;
  if (kernel == Kernel::Sinc) {
    // ||Phi||^2 over R is sum |c_k|^2 (orthonormal shifts).
    const double total = itp.coeffs().norm() * itp.coeffs().norm();
    interp_ext_sq = std::max(0.0, total - I.interp_sq);
  }
  const double W = std::min(-lo, hi);
  out.tail_bound = std::sqrt(exterior_energy(fp.freq_decay, W)) + std::sqrt(interp_ext_sq);
  return out;
}

InterpSupError interp_sup_error(const FunctionPair& fp, const SamplingPlan& plan, Kernel kernel,
                                const std::vector<double>& grid) {
  if (kernel == Kernel::Sinc) {
    throw ValidationError("interp_sup_error: only the b1 and b2 kernels are supported");
  }
  if (grid.empty()) throw ValidationError("interp_sup_error: evaluation grid is empty");
  const Interpolant itp = Interpolant::from_dft(fp, plan, kernel);
  const std::size_t n = plan.n();
  InterpSupError out;
  out.window_lo = static_cast<double>(index_min(n)) / plan.p();
  out.window_hi = static_cast<double>(index_max(n)) / plan.p();
  for (double xi : grid) {
    if (xi < out.window_lo || xi > out.window_hi) continue;
    out.value = std::max(out.value, std::abs(fp.fhat(xi) - interp_eval(itp, xi)));
    ++out.points_used;
  }
  if (out.points_used == 0) {
    throw ValidationError("interp_sup_error: no grid point falls inside the covered window");
  }
  return out;
}

}  // namespace ftdft
