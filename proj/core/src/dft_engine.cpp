#include "ftdft/dft_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ftdft/errors.hpp"
#include "ftdft/fft.hpp"

namespace ftdft {

namespace {

using cplx = std::complex<double>;

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx z) {
    add_part(re_, re_c_, z.real());
    add_part(im_, im_c_, z.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

void check_n(std::size_t n) {
  if (n == 0) throw ValidationError("sampling plan: n must be positive");
}

double vector_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

SampledVector transform(const SampledVector& y, fft::Direction dir, const TransformOptions& opts) {
  std::vector<cplx> data = y.physical();
  fft::transform(data, dir, opts.allow_general_length);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (cplx& z : data) z *= scale;
  return SampledVector(std::move(data));
}

// Smallest fold count within `cap` that brings the shifted tail below tol,
// or `cap` itself when that is not enough.
std::int64_t folds_within(const DecaySpec& d, double spacing, double offset, double tol,
                          std::int64_t cap) {
  if (d.shifted_tail_bound(spacing, offset, cap) > tol) return cap;
  return d.terms_for_tail(spacing, offset, tol, cap);
}

}  // namespace

SamplingPlan::SamplingPlan(std::size_t n, double h, double p) : n_(n), h_(h), p_(p) {}

SamplingPlan SamplingPlan::from_step(std::size_t n, double h) {
  check_n(n);
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("sampling plan: h must be positive");
  return SamplingPlan(n, h, static_cast<double>(n) * h);
}

SamplingPlan SamplingPlan::from_length(std::size_t n, double p) {
  check_n(n);
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("sampling plan: p must be positive");
  return SamplingPlan(n, p / static_cast<double>(n), p);
}

SamplingPlan SamplingPlan::dual() const { return SamplingPlan(n_, 1.0 / p_, 1.0 / h_); }

long index_min(std::size_t n) { return -static_cast<long>((n - 1) / 2); }
long index_max(std::size_t n) { return static_cast<long>(n / 2); }

std::size_t physical_index(long j, std::size_t n) {
  const long ln = static_cast<long>(n);
  long m = j % ln;
  if (m < 0) m += ln;
  return static_cast<std::size_t>(m);
}

long logical_index(std::size_t m, std::size_t n) {
  return 2 * m <= n ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

SampledVector::SampledVector(std::vector<std::complex<double>> physical_values)
    : values_(std::move(physical_values)) {
  if (values_.empty()) throw ValidationError("SampledVector: length must be positive");
}

double SampledVector::norm() const { return vector_norm(values_); }

SampledVector sample_scaled(const ScalarFunction& g, double step, std::size_t n) {
  check_n(n);
  const double scale = std::sqrt(step);
  std::vector<cplx> values(n);
  for (std::size_t m = 0; m < n; ++m) {
    values[m] = scale * g(step * static_cast<double>(logical_index(m, n)));
  }
  return SampledVector(std::move(values));
}

SampledVector sample(const FunctionPair& fp, Side side, const SamplingPlan& plan) {
  const std::size_t n = plan.n();
  if (side == Side::Time) return sample_scaled(fp.f, plan.h(), n);
  // k / p rather than k * (1/p): the frequency grid is the one named in E.
  const double scale = std::sqrt(1.0 / plan.p());
  std::vector<cplx> values(n);
  for (std::size_t m = 0; m < n; ++m) {
    values[m] = scale * fp.fhat(static_cast<double>(logical_index(m, n)) / plan.p());
  }
  return SampledVector(std::move(values));
}

SampledVector dft_unitary(const SampledVector& y, const TransformOptions& opts) {
  return transform(y, fft::Direction::Forward, opts);
}

SampledVector dft_unitary_adjoint(const SampledVector& y, const TransformOptions& opts) {
  return transform(y, fft::Direction::Backward, opts);
}

std::complex<double> periodize(const ScalarFunction& f, double period, double x,
                               const DecaySpec& decay, double tol, std::int64_t max_terms) {
  if (!(period > 0.0)) throw ValidationError("periodize: period must be positive");
  if (!(tol > 0.0)) throw ValidationError("periodize: tol must be positive");
  const std::int64_t L = decay.terms_for_tail(period, x, tol, max_terms);
  CompensatedSum acc;
  for (std::int64_t l = L; l >= 1; --l) {
    const double shift = period * static_cast<double>(l);
    acc.add(f(x + shift));
    acc.add(f(x - shift));
  }
  acc.add(f(x));
  return acc.value();
}

ErrorReport error_l2(const FunctionPair& fp, const SamplingPlan& plan,
                     const TransformOptions& opts) {
  const SampledVector approx = dft_unitary(sample(fp, Side::Time, plan), opts);
  const SampledVector exact = sample(fp, Side::Frequency, plan);
  double sq = 0.0;
  double mx = 0.0;
  for (std::size_t m = 0; m < plan.n(); ++m) {
    const double d = std::abs(exact.physical()[m] - approx.physical()[m]);
    sq += d * d;
    mx = std::max(mx, d);
  }
  ErrorReport r;
  r.e_l2 = std::sqrt(sq);
  r.e_sup = std::sqrt(plan.p()) * mx;
  r.plan = plan;
  r.label = fp.label;
  return r;
}

double error_sup(const FunctionPair& fp, const SamplingPlan& plan, const TransformOptions& opts) {
  return error_l2(fp, plan, opts).e_sup;
}

FunctionPair symmetry_pair(const FunctionPair& fp) {
  return FunctionPair{[fhat = fp.fhat](double x) { return std::conj(fhat(x)); },
                      [f = fp.f](double xi) { return std::conj(f(xi)); },
                      fp.freq_decay, fp.time_decay, "dual(" + fp.label + ")"};
}

double poisson_check(const FunctionPair& fp, const SamplingPlan& plan, long k, double tol) {
  const std::size_t n = plan.n();
  if (k < index_min(n) || k > index_max(n)) {
    throw ValidationError("poisson_check: k must lie in the symmetric index set");
  }
  if (!(tol > 0.0)) throw ValidationError("poisson_check: tol must be positive");
  const double h = plan.h();
  constexpr std::int64_t cap = std::int64_t{1} << 31;

  // h sum_j f(hj) e^{-2 pi i k j / n}; the phase only depends on k j mod n.
  const std::int64_t J = fp.time_decay.terms_for_tail(h, 0.0, tol / h, cap);
  const auto ln = static_cast<std::int64_t>(n);
  const std::int64_t kk = static_cast<std::int64_t>(physical_index(k, n));
  auto phase = [&](std::int64_t j) {
    std::int64_t r = ((j % ln) + ln) % ln;
    r = (kk * r) % ln;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(ln);
    return cplx(std::cos(angle), std::sin(angle));
  };
  CompensatedSum lhs;
  for (std::int64_t j = J; j >= 1; --j) {
    const double x = h * static_cast<double>(j);
    lhs.add(fp.f(x) * phase(j));
    lhs.add(fp.f(-x) * phase(-j));
  }
  lhs.add(fp.f(0.0));
  const cplx left = h * lhs.value();

  const double xi = static_cast<double>(k) / plan.p();
  const cplx right = periodize(fp.fhat, 1.0 / h, xi, fp.freq_decay, tol, cap);
  return std::abs(left - right);
}

DecompositionTerms decomposition_terms(const FunctionPair& fp, const SamplingPlan& plan,
                                       const DecompositionOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("decomposition_terms: tol must be positive");
  const std::size_t n = plan.n();
  const double h = plan.h();
  const double p = plan.p();
  const std::int64_t cap =
      std::max<std::int64_t>(1, opts.eval_budget / static_cast<std::int64_t>(n));

  DecompositionTerms out;

  // Time side: entries sqrt(h) (P_p f - f)(hj), |hj| <= p/2. A pointwise
  // tail t gives at most sqrt(n h) t = sqrt(p) t in norm.
  {
    const double pt_tol = opts.tol / std::sqrt(p);
    const std::int64_t M = folds_within(fp.time_decay, p, 0.5 * p, pt_tol, cap);
    double sq = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double x = h * static_cast<double>(logical_index(m, n));
      CompensatedSum acc;
      for (std::int64_t l = M; l >= 1; --l) {
        const double shift = p * static_cast<double>(l);
        acc.add(fp.f(x + shift));
        acc.add(fp.f(x - shift));
      }
      sq += h * std::norm(acc.value());
    }
    out.time_alias = std::sqrt(sq);
    out.time_folds = M;
    out.time_tail_bound = std::sqrt(p) * fp.time_decay.shifted_tail_bound(p, 0.5 * p, M);
  }

  // Frequency side: entries sqrt(1/p) (P_{1/h} fhat - fhat)(k/p),
  // |k/p| <= 1/(2h); norm factor sqrt(n/p) = sqrt(1/h).
  {
    const double period = 1.0 / h;
    const double pt_tol = opts.tol * std::sqrt(h);
    const std::int64_t M = folds_within(fp.freq_decay, period, 0.5 * period, pt_tol, cap);
    double sq = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double xi = static_cast<double>(logical_index(m, n)) / p;
      CompensatedSum acc;
      for (std::int64_t l = M; l >= 1; --l) {
        const double shift = period * static_cast<double>(l);
        acc.add(fp.fhat(xi + shift));
        acc.add(fp.fhat(xi - shift));
      }
      sq += std::norm(acc.value()) / p;
    }
    out.freq_alias = std::sqrt(sq);
    out.freq_folds = M;
    out.freq_tail_bound =
        fp.freq_decay.shifted_tail_bound(period, 0.5 * period, M) / std::sqrt(h);
  }
  return out;
}

}  // namespace ftdft
