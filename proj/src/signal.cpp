#include "rwkit/signal.hpp"

#include <algorithm>
#include <cmath>

namespace rwkit {
namespace {

void check_finite(std::span<const Complex> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw NumericError("signal: non-finite entry at index " + std::to_string(i), 0);
    }
  }
}

void check_same_shape(const Shape& a, const Shape& b) {
  if (!(a == b)) {
    throw ShapeError("signal: operands have different shapes");
  }
}

} // namespace

SignalVector::SignalVector(Shape shape, ComplexVector values) : shape_(shape), values_(std::move(values)) {
  if (shape_.size() == 0) {
    throw ShapeError("signal: empty shape");
  }
  if (values_.size() != shape_.size()) {
    throw ShapeError("signal: " + std::to_string(values_.size()) + " values for a shape of size " +
                     std::to_string(shape_.size()));
  }
  check_finite(values_);
}

SignalVector::SignalVector(Shape shape, std::span<const double> values)
    : SignalVector(shape, ComplexVector(values.begin(), values.end())) {}

SignalVector SignalVector::zeros(Shape shape) { return {shape, ComplexVector(shape.size())}; }

std::span<const Complex> SignalVector::plane(std::size_t channel) const {
  const std::size_t p = shape_.plane_size();
  return std::span<const Complex>(values_).subspan(channel * p, p);
}

bool SignalVector::is_real() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

RealVector SignalVector::real_part() const {
  RealVector out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](const Complex& v) { return v.real(); });
  return out;
}

double SignalVector::max_imag() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) {
    m = std::max(m, std::abs(v.imag()));
  }
  return m;
}

double SignalVector::norm2() const noexcept { return rwkit::norm2(values_); }

SignalVector SignalVector::operator+(const SignalVector& other) const {
  check_same_shape(shape_, other.shape_);
  ComplexVector out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += other.values_[i];
  }
  return {shape_, std::move(out)};
}

SignalVector SignalVector::operator-(const SignalVector& other) const {
  check_same_shape(shape_, other.shape_);
  ComplexVector out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= other.values_[i];
  }
  return {shape_, std::move(out)};
}

SignalVector SignalVector::operator*(double scale) const {
  ComplexVector out(values_);
  for (auto& v : out) {
    v *= scale;
  }
  return {shape_, std::move(out)};
}

double norm2(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& x : v) {
    s += std::norm(x);
  }
  return std::sqrt(s);
}

double norm1(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& x : v) {
    s += std::abs(x);
  }
  return s;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw ShapeError("max_abs_diff: length mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

} // namespace rwkit
