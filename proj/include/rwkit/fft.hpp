#pragma once

#include <cstddef>
#include <span>

#include "rwkit/signal.hpp"

/// Unitary discrete Fourier transforms (1/sqrt(n) in both directions).
///
/// Power-of-two lengths use an iterative radix-2 decimation-in-time kernel
/// with per-thread cached twiddle tables. Other lengths fall back to direct
/// O(n^2) evaluation, which is only meant for the tiny vectors that appear
/// in tests and defect oracles.
namespace rwkit::fft {

void forward(std::span<Complex> data);
void inverse(std::span<Complex> data);

/// Separable 2D transform of a row-major `rows` x `cols` block.
void forward_2d(std::span<Complex> data, std::size_t rows, std::size_t cols);
void inverse_2d(std::span<Complex> data, std::size_t rows, std::size_t cols);

/// Transforms every plane of a signal laid out according to `shape`.
void forward(std::span<Complex> data, const Shape& shape);
void inverse(std::span<Complex> data, const Shape& shape);

} // namespace rwkit::fft
