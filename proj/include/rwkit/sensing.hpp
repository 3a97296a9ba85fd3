#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwkit/signal.hpp"

namespace rwkit {

/// Random partial Fourier operator: apply(x) = m (.) FFT(x), adjoint(y) = IFFT(m (.) y),
/// with a unitary FFT and an i.i.d. Bernoulli(subsample_prob) mask over one plane.
/// The mask is shared by every channel. apply(adjoint(y)) = m (.) y exactly, so
/// Phi Phi^* is the identity on the measurement range.
class SensingOperator {
public:
  const Shape& shape() const noexcept { return shape_; }
  std::size_t dimension() const noexcept { return shape_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  double subsample_prob() const noexcept { return subsample_prob_; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  std::size_t retained() const noexcept;
  bool full_sampling() const noexcept { return retained() == mask_.size(); }

  /// Measurements; entries off the mask are exactly zero.
  ComplexVector apply(const SignalVector& x) const;
  SignalVector adjoint(std::span<const Complex> y) const;

  /// adjoint(apply(x)): orthogonal projection onto the sampled subspace.
  SignalVector project(const SignalVector& x) const;

  void apply_inplace(std::span<Complex> data) const;
  void adjoint_inplace(std::span<Complex> data) const;
  /// Zeroes the entries outside the mask in a measurement-domain vector.
  void mask_inplace(std::span<Complex> data) const;

private:
  friend SensingOperator make_partial_fourier(const Shape& shape, double q, std::uint64_t seed);
  friend SensingOperator make_sensing_with_mask(const Shape& shape, std::vector<std::uint8_t> mask);

  Shape shape_{};
  std::uint64_t seed_{0};
  double subsample_prob_{1.0};
  std::vector<std::uint8_t> mask_;
};

/// Draws mask_i = [Rng(seed).uniform() < q] for each index of one plane.
/// Deterministic in (shape, q, seed). Throws ParameterError if q is outside [0, 1].
SensingOperator make_partial_fourier(const Shape& shape, double q, std::uint64_t seed);

/// Operator with an explicit plane mask (entries 0 or 1); seed 0, q = retained fraction.
SensingOperator make_sensing_with_mask(const Shape& shape, std::vector<std::uint8_t> mask);

/// (rho, alpha)-robust-width parameters, with the probability that a random
/// operator satisfies them when known.
struct RwpParameters {
  double rho{0.0};
  double alpha{0.0};
  std::optional<double> rwp_prob;

  RwpParameters(double rho, double alpha, std::optional<double> rwp_prob = std::nullopt);
};

} // namespace rwkit
