#include "rwkit/sensing.hpp"

#include <algorithm>
#include <numeric>

#include "rwkit/fft.hpp"
#include "rwkit/rng.hpp"

namespace rwkit {

std::size_t SensingOperator::retained() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

void SensingOperator::mask_inplace(std::span<Complex> data) const {
  if (data.size() != shape_.size()) {
    throw ShapeError("sensing: vector length " + std::to_string(data.size()) + " does not match operator dimension " +
                     std::to_string(shape_.size()));
  }
  const std::size_t plane = shape_.plane_size();
  for (std::size_t c = 0; c < shape_.channels; ++c) {
    for (std::size_t i = 0; i < plane; ++i) {
      if (mask_[i] == 0) {
        data[c * plane + i] = Complex{0.0, 0.0};
      }
    }
  }
}

void SensingOperator::apply_inplace(std::span<Complex> data) const {
  if (data.size() != shape_.size()) {
    throw ShapeError("sensing: signal length " + std::to_string(data.size()) + " does not match operator dimension " +
                     std::to_string(shape_.size()));
  }
  fft::forward(data, shape_);
  mask_inplace(data);
}

void SensingOperator::adjoint_inplace(std::span<Complex> data) const {
  mask_inplace(data);
  fft::inverse(data, shape_);
}

ComplexVector SensingOperator::apply(const SignalVector& x) const {
  if (!(x.shape() == shape_)) {
    throw ShapeError("sensing: signal shape does not match operator shape");
  }
  ComplexVector y(x.values());
  apply_inplace(y);
  return y;
}

SignalVector SensingOperator::adjoint(std::span<const Complex> y) const {
  ComplexVector x(y.begin(), y.end());
  adjoint_inplace(x);
  return {shape_, std::move(x)};
}

SignalVector SensingOperator::project(const SignalVector& x) const { return adjoint(apply(x)); }

SensingOperator make_partial_fourier(const Shape& shape, double q, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ParameterError("sensing: subsample probability must lie in [0, 1]");
  }
  if (shape.size() == 0) {
    throw ShapeError("sensing: empty shape");
  }
  SensingOperator op;
  op.shape_ = shape;
  op.seed_ = seed;
  op.subsample_prob_ = q;
  op.mask_.resize(shape.plane_size());
  Rng rng(seed);
  for (auto& m : op.mask_) {
    m = rng.bernoulli(q) ? 1 : 0;
  }
  return op;
}

SensingOperator make_sensing_with_mask(const Shape& shape, std::vector<std::uint8_t> mask) {
  if (mask.size() != shape.plane_size()) {
    throw ShapeError("sensing: mask length does not match plane size");
  }
  for (auto m : mask) {
    if (m > 1) {
      throw ParameterError("sensing: mask entries must be 0 or 1");
    }
  }
  SensingOperator op;
  op.shape_ = shape;
  op.mask_ = std::move(mask);
  op.subsample_prob_ = static_cast<double>(op.retained()) / static_cast<double>(op.mask_.size());
  return op;
}

RwpParameters::RwpParameters(double r, double a, std::optional<double> q) : rho(r), alpha(a), rwp_prob(q) {
  if (!(rho > 0.0) || !(alpha > 0.0)) {
    throw ParameterError("rwp: rho and alpha must be positive");
  }
  if (rwp_prob && !(*rwp_prob >= 0.0 && *rwp_prob <= 1.0)) {
    throw ParameterError("rwp: probability must lie in [0, 1]");
  }
}

} // namespace rwkit
