#include "ftdft/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ftdft/errors.hpp"

namespace ftdft::fft {

namespace {

using cplx = std::complex<double>;

struct RadixTwoPlan {
  std::size_t n = 0;
  std::vector<std::size_t> bitrev;
  std::vector<cplx> twiddle;  // e^{-2 pi i m / n}, m < n/2
};

std::shared_ptr<const RadixTwoPlan> build_plan(std::size_t n) {
  auto plan = std::make_shared<RadixTwoPlan>();
  plan->n = n;
  plan->bitrev.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    plan->bitrev[i] = r;
  }
  plan->twiddle.resize(n / 2);
  for (std::size_t m = 0; m < n / 2; ++m) {
    // Each twiddle is evaluated directly; no recurrence drift.
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    plan->twiddle[m] = cplx(std::cos(angle), std::sin(angle));
  }
  return plan;
}

class PlanCache {
 public:
  std::shared_ptr<const RadixTwoPlan> get(std::size_t n) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    }
    auto plan = build_plan(n);
    std::unique_lock lock(mutex_);
    return plans_.emplace(n, std::move(plan)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const RadixTwoPlan>> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void radix2_forward(std::span<cplx> data) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const auto plan = plan_cache().get(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = plan->bitrev[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx t = plan->twiddle[k * stride] * data[start + k + half];
        const cplx u = data[start + k];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

void bluestein_forward(std::span<cplx> data) {
  const std::size_t n = data.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    const auto k2 = static_cast<unsigned long long>(k) * k % (2ULL * n);
    const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(angle), std::sin(angle));
  }
  std::vector<cplx> a(m, 0.0);
  std::vector<cplx> b(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) a[k] = data[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  radix2_forward(a);
  radix2_forward(b);
  for (std::size_t k = 0; k < m; ++k) a[k] = std::conj(a[k] * b[k]);
  radix2_forward(a);  // conj-forward-conj is the inverse (unscaled)
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) data[k] = std::conj(a[k]) * scale * chirp[k];
}

}  // namespace

void transform(std::span<cplx> data, Direction dir, bool allow_general_length) {
  const std::size_t n = data.size();
  if (n == 0) throw ValidationError("fft::transform: empty input");
  const bool pow2 = is_power_of_two(n);
  if (!pow2 && !allow_general_length) {
    throw ValidationError("fft::transform: length " + std::to_string(n) +
                          " is not a power of two (general-length transform disabled)");
  }
  if (dir == Direction::Backward) {
    for (auto& v : data) v = std::conj(v);
  }
  if (pow2) {
    radix2_forward(data);
  } else {
    bluestein_forward(data);
  }
  if (dir == Direction::Backward) {
    for (auto& v : data) v = std::conj(v);
  }
}

}  // namespace ftdft::fft
