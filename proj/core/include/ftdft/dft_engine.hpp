#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ftdft/corpus.hpp"
#include "ftdft/decay.hpp"

namespace ftdft {

/// Sampling parameters: n samples with step h over an interval of length
/// p = n h. p is stored, never recomputed, so that dual plans keep
/// p' = 1/h exactly as computed.
class SamplingPlan {
 public:
  SamplingPlan() = default;
  static SamplingPlan from_step(std::size_t n, double h);
  static SamplingPlan from_length(std::size_t n, double p);

  /// Plan of the time-frequency dual problem: step 1/p, length 1/h.
  SamplingPlan dual() const;

  std::size_t n() const { return n_; }
  double h() const { return h_; }
  double p() const { return p_; }

 private:
  SamplingPlan(std::size_t n, double h, double p);
  std::size_t n_ = 1;
  double h_ = 1.0;
  double p_ = 1.0;
};

/// Symmetric index set [n] = {j : -n/2 < j <= n/2}.
long index_min(std::size_t n);
long index_max(std::size_t n);
/// Storage slot m in {0..n-1} with m = j (mod n).
std::size_t physical_index(long j, std::size_t n);
/// Inverse of physical_index on [n].
long logical_index(std::size_t m, std::size_t n);

/// Complex vector indexed by the symmetric set [n], stored so that slot m
/// holds logical index j = m (mod n). Values are fixed at construction.
class SampledVector {
 public:
  explicit SampledVector(std::vector<std::complex<double>> physical_values);

  std::size_t size() const { return values_.size(); }
  std::complex<double> at(long j) const { return values_[physical_index(j, values_.size())]; }
  const std::vector<std::complex<double>>& physical() const { return values_; }
  double norm() const;

 private:
  std::vector<std::complex<double>> values_;
};

enum class Side { Time, Frequency };

struct TransformOptions {
  bool allow_general_length = false;
};

/// (sqrt(step) g(step * j))_{j in [n]}.
SampledVector sample_scaled(const ScalarFunction& g, double step, std::size_t n);

/// Time side: sqrt(h) f(h j). Frequency side: sqrt(1/p) fhat(k / p).
SampledVector sample(const FunctionPair& fp, Side side, const SamplingPlan& plan);

/// (1/sqrt(n)) sum_{j in [n]} y_j e^{-2 pi i k j / n} for k in [n].
SampledVector dft_unitary(const SampledVector& y, const TransformOptions& opts = {});

/// Conjugate transpose of dft_unitary.
SampledVector dft_unitary_adjoint(const SampledVector& y, const TransformOptions& opts = {});

/// sum_l f(x + period * l), truncated once the decay-metadata tail bound
/// drops below tol. Throws NumericalError if that needs more than
/// max_terms shifts per side.
std::complex<double> periodize(const ScalarFunction& f, double period, double x,
                               const DecaySpec& decay, double tol,
                               std::int64_t max_terms = std::int64_t{1} << 31);

/// Measured error of one sampling plan. Bound fields are zero and
/// has_bound is false until filled in by the caller (see planner).
struct ErrorReport {
  double e_l2 = 0.0;
  double e_sup = 0.0;
  double bound_time = 0.0;
  double bound_freq = 0.0;
  bool has_bound = false;
  SamplingPlan plan;
  std::string label;
};

/// e_l2 = || fhat_{1/p,n} - F f_{h,n} ||, with fhat evaluated exactly;
/// e_sup = max_k |fhat(k/p) - h sum_j f(hj) e^{-2 pi i k j / n}|.
ErrorReport error_l2(const FunctionPair& fp, const SamplingPlan& plan,
                     const TransformOptions& opts = {});
double error_sup(const FunctionPair& fp, const SamplingPlan& plan,
                 const TransformOptions& opts = {});

/// (conj o fhat, conj o f) with decay metadata swapped. Evaluating the
/// error of the result on plan.dual() reproduces the original error.
FunctionPair symmetry_pair(const FunctionPair& fp);

/// |h sum_{j in Z} f(hj) e^{-2 pi i (k/p) h j} - sum_l fhat(k/p + l/h)|
/// with both series truncated at decay-metadata tail <= tol.
double poisson_check(const FunctionPair& fp, const SamplingPlan& plan, long k, double tol);

struct DecompositionOptions {
  /// Target for each tail contribution (in vector norm).
  double tol = 1e-10;
  /// Cap on function evaluations per side; fixes the number of folds at
  /// large n.
  std::int64_t eval_budget = std::int64_t{1} << 22;
};

/// Time and frequency aliasing terms of the error decomposition:
///   freq_alias = ||(fhat - P_{1/h} fhat)_{1/p,n}||,
///   time_alias = ||(f - P_p f)_{h,n}||.
/// Periodizations are folded over `folds` copies on each side; the
/// *_tail_bound fields bound the neglected remainder in the same norm.
struct DecompositionTerms {
  double freq_alias = 0.0;
  double time_alias = 0.0;
  double freq_tail_bound = 0.0;
  double time_tail_bound = 0.0;
  std::int64_t time_folds = 0;
  std::int64_t freq_folds = 0;
};

DecompositionTerms decomposition_terms(const FunctionPair& fp, const SamplingPlan& plan,
                                       const DecompositionOptions& opts = {});

}  // namespace ftdft
