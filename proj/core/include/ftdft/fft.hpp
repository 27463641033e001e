#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ftdft::fft {

enum class Direction {
  Forward,   // sum_m x_m e^{-2 pi i q m / n}
  Backward,  // sum_m x_m e^{+2 pi i q m / n}
};

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Unnormalized in-place transform in natural (physical) order.
///
/// Power-of-two lengths use an iterative radix-2 kernel with twiddles
/// taken from a process-wide cache (safe for concurrent readers). Other
/// lengths go through Bluestein's chirp-z reduction when
/// `allow_general_length` is set and are rejected otherwise.
void transform(std::span<std::complex<double>> data, Direction dir,
               bool allow_general_length = false);

}  // namespace ftdft::fft
