#include "rwkit/fft.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <unordered_map>
#include <vector>

namespace rwkit::fft {
namespace {

struct Plan {
  std::size_t n;
  std::vector<std::size_t> bitrev;
  ComplexVector twiddle; // exp(-2 pi i k / n), k < n/2

  explicit Plan(std::size_t size) : n(size), bitrev(size), twiddle(size / 2) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) {
      ++bits;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) {
        r |= ((i >> b) & 1U) << (bits - 1 - b);
      }
      bitrev[i] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle[k] = {std::cos(angle), std::sin(angle)};
    }
  }
};

const Plan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Plan>(n);
  }
  return *slot;
}

void radix2(std::span<Complex> a, bool inverse_dir) {
  const Plan& p = plan_for(a.size());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i < p.bitrev[i]) {
      std::swap(a[i], a[p.bitrev[i]]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = p.twiddle[k * stride];
        if (inverse_dir) {
          w = std::conj(w);
        }
        const Complex t = w * a[start + k + half];
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

void direct(std::span<Complex> a, bool inverse_dir) {
  const std::size_t n = a.size();
  const ComplexVector in(a.begin(), a.end());
  const double sign = inverse_dir ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double angle =
          sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += in[j] * Complex{std::cos(angle), std::sin(angle)};
    }
    a[k] = acc;
  }
}

void transform(std::span<Complex> a, bool inverse_dir) {
  if (a.size() <= 1) {
    return;
  }
  if (is_power_of_two(a.size())) {
    radix2(a, inverse_dir);
  } else {
    direct(a, inverse_dir);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(a.size()));
  for (auto& v : a) {
    v *= scale;
  }
}

void transform_2d(std::span<Complex> data, std::size_t rows, std::size_t cols, bool inverse_dir) {
  if (data.size() != rows * cols) {
    throw ShapeError("fft: 2D block size does not match rows*cols");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    transform(data.subspan(r * cols, cols), inverse_dir);
  }
  ComplexVector column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      column[r] = data[r * cols + c];
    }
    transform(column, inverse_dir);
    for (std::size_t r = 0; r < rows; ++r) {
      data[r * cols + c] = column[r];
    }
  }
}

void transform_planes(std::span<Complex> data, const Shape& shape, bool inverse_dir) {
  if (data.size() != shape.size()) {
    throw ShapeError("fft: data length does not match shape");
  }
  const std::size_t plane = shape.plane_size();
  for (std::size_t c = 0; c < shape.channels; ++c) {
    auto block = data.subspan(c * plane, plane);
    if (shape.grid) {
      transform_2d(block, shape.rows, shape.cols, inverse_dir);
    } else {
      transform(block, inverse_dir);
    }
  }
}

} // namespace

void forward(std::span<Complex> data) { transform(data, false); }
void inverse(std::span<Complex> data) { transform(data, true); }

void forward_2d(std::span<Complex> data, std::size_t rows, std::size_t cols) {
  transform_2d(data, rows, cols, false);
}
void inverse_2d(std::span<Complex> data, std::size_t rows, std::size_t cols) {
  transform_2d(data, rows, cols, true);
}

void forward(std::span<Complex> data, const Shape& shape) { transform_planes(data, shape, false); }
void inverse(std::span<Complex> data, const Shape& shape) { transform_planes(data, shape, true); }

} // namespace rwkit::fft
