#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rwkit/error.hpp"

namespace rwkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Layout of a signal: `channels` planes, each either a 1D line of `cols`
/// samples or a `rows` x `cols` grid stored row-major. Channels are stored
/// one plane after another.
struct Shape {
  std::size_t channels{1};
  std::size_t rows{1};
  std::size_t cols{0};
  bool grid{false};

  static Shape line(std::size_t n, std::size_t channels = 1) { return {channels, 1, n, false}; }
  static Shape image(std::size_t rows, std::size_t cols, std::size_t channels = 1) {
    return {channels, rows, cols, true};
  }

  std::size_t plane_size() const noexcept { return rows * cols; }
  std::size_t size() const noexcept { return channels * rows * cols; }

  friend bool operator==(const Shape&, const Shape&) = default;
};

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// Real- or complex-valued finite signal with an attached shape.
class SignalVector {
public:
  SignalVector() = default;

  /// Throws ShapeError if `values.size() != shape.size()` or the shape is empty,
  /// NumericError if any entry is non-finite.
  SignalVector(Shape shape, ComplexVector values);
  SignalVector(Shape shape, std::span<const double> values);

  static SignalVector zeros(Shape shape);
  static SignalVector from_real(std::span<const double> values) {
    return SignalVector(Shape::line(values.size()), values);
  }

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }

  const ComplexVector& values() const noexcept { return values_; }
  std::span<const Complex> plane(std::size_t channel) const;

  Complex operator[](std::size_t i) const { return values_[i]; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const noexcept;
  RealVector real_part() const;
  /// max_i |Im x_i|
  double max_imag() const noexcept;

  double norm2() const noexcept;

  SignalVector operator+(const SignalVector& other) const;
  SignalVector operator-(const SignalVector& other) const;
  SignalVector operator*(double scale) const;

  friend bool operator==(const SignalVector&, const SignalVector&) = default;

private:
  Shape shape_{};
  ComplexVector values_;
};

double norm2(std::span<const Complex> v) noexcept;
double norm1(std::span<const Complex> v) noexcept;
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

} // namespace rwkit
