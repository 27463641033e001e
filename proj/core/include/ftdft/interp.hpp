#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ftdft/corpus.hpp"
#include "ftdft/dft_engine.hpp"

namespace ftdft {

/// Cardinal kernels phi with phi(k) = delta_k on the integers.
enum class Kernel { Sinc, B1, B2 };

std::string kernel_name(Kernel k);
/// Accepts "sinc", "b1", "b2" (case-insensitive).
Kernel parse_kernel(const std::string& name);
double kernel_eval(Kernel k, double t);

/// Phi(xi) = sqrt(p) sum_{k in [n]} coeffs[k] phi(p xi - k).
///
/// Built from the DFT output it reconstructs fhat on R; at the nodes k/p
/// it returns sqrt(p) coeffs[k].
class Interpolant {
 public:
  Interpolant(SampledVector coeffs, double p, Kernel kernel);

  /// coeffs = dft_unitary(f_{h,n}).
  static Interpolant from_dft(const FunctionPair& fp, const SamplingPlan& plan, Kernel kernel,
                              const TransformOptions& opts = {});

  const SampledVector& coeffs() const { return coeffs_; }
  double p() const { return p_; }
  Kernel kernel() const { return kernel_; }

 private:
  SampledVector coeffs_;
  double p_;
  Kernel kernel_;
};

/// B1 and B2 touch at most two nodes; sinc sums all n terms.
std::complex<double> interp_eval(const Interpolant& itp, double xi);

struct InterpQuadrature {
  /// Gauss-Legendre points per frequency cell of width 1/p.
  int points_per_cell = 8;
  /// Cells added on each side beyond the node range [-n/2, n/2] / p.
  int window_cells = 4;
  /// Relative disagreement between the q- and q/2-point results of the
  /// squared integral above which the quadrature is rejected.
  double richardson_rtol = 1e-3;
  /// Absolute floor for the same check, on the L2 value.
  double abs_floor = 1e-14;
};

/// ||fhat - Phi||_{L2(R)} <= main + tail_bound, with main the quadrature
/// value on [-window, window] and tail_bound covering the exterior:
/// the frequency decay envelope of fhat plus the interpolant's exterior
/// energy (zero for B1/B2 by support, Parseval for sinc).
struct InterpL2Error {
  double main = 0.0;
  double tail_bound = 0.0;
  double window = 0.0;
  /// Kernel/decay combinations outside the proven range (measurement still
  /// valid).
  std::vector<std::string> warnings;
};

InterpL2Error interp_l2_error(const FunctionPair& fp, const SamplingPlan& plan, Kernel kernel,
                              const InterpQuadrature& quad = {});

struct InterpSupError {
  double value = 0.0;
  /// Covered window [lo, hi] = [k_min / p, k_max / p].
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points_used = 0;
};

/// max |fhat(xi) - Phi(xi)| over grid points inside the covered window.
/// Only B1 and B2 are accepted.
InterpSupError interp_sup_error(const FunctionPair& fp, const SamplingPlan& plan, Kernel kernel,
                                const std::vector<double>& grid);

}  // namespace ftdft
