#include "rwkit/reconstruct.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "rwkit/parallel.hpp"
#include "rwkit/rng.hpp"

namespace rwkit {

std::size_t default_threads() {
  if (const char* env = std::getenv("RWKIT_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) {
        return static_cast<std::size_t>(v);
      }
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void ReconstructionParams::validate() const {
  if (iterations < 1) {
    throw ParameterError("reconstruction: iterations must be at least 1");
  }
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw ParameterError("reconstruction: threshold must be finite and nonnegative");
  }
  if (!(subsample_prob >= 0.0 && subsample_prob <= 1.0)) {
    throw ParameterError("reconstruction: subsample probability must lie in [0, 1]");
  }
}

ComplexVector ista_coefficients(std::span<const Complex> y, const SensingOperator& op,
                                const ReconstructionParams& params) {
  params.validate();
  const Shape& shape = op.shape();
  if (y.size() != shape.size()) {
    throw ShapeError("ista: measurement length " + std::to_string(y.size()) + " does not match operator dimension " +
                     std::to_string(shape.size()));
  }
  params.frame.check_compatible(shape);

  ComplexVector u(shape.size());
  ComplexVector work(shape.size());
  for (std::size_t t = 1; t <= params.iterations; ++t) {
    work = u;
    synthesize_inplace(params.frame, work, shape);
    op.apply_inplace(work);
    for (std::size_t i = 0; i < work.size(); ++i) {
      work[i] = y[i] - work[i];
    }
    op.adjoint_inplace(work);
    analyze_inplace(params.frame, work, shape);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += work[i];
      if (!std::isfinite(u[i].real()) || !std::isfinite(u[i].imag())) {
        throw NumericError("ista: non-finite coefficient", t);
      }
    }
    soft_threshold_inplace(u, params.threshold);
  }
  return u;
}

SignalVector ista_reconstruct(std::span<const Complex> y, const SensingOperator& op,
                              const ReconstructionParams& params) {
  return synthesize(params.frame, ista_coefficients(y, op, params), op.shape());
}

PurifiedSignal purify_with(const SignalVector& x, const SensingOperator& op, const ReconstructionParams& params) {
  const ComplexVector y = op.apply(x);
  const ComplexVector u = ista_coefficients(y, op, params);
  SignalVector recon = synthesize(params.frame, u, x.shape());

  PurifiedSignal out;
  out.operator_seed = op.seed();
  out.iterations_run = params.iterations;
  out.final_coefficient_l1 = norm1(u);
  if (x.is_real()) {
    out.imag_residual = recon.max_imag();
    const RealVector re = recon.real_part();
    out.value = SignalVector(x.shape(), re);
  } else {
    out.value = std::move(recon);
  }
  return out;
}

PurifiedSignal purify(const SignalVector& x, const ReconstructionParams& params, std::uint64_t seed) {
  params.validate();
  const SensingOperator op = make_partial_fourier(x.shape(), params.subsample_prob, seed);
  return purify_with(x, op, params);
}

std::vector<PurifiedSignal> purify_batch(std::span<const SignalVector> xs, const ReconstructionParams& params,
                                         std::uint64_t master_seed, std::size_t threads) {
  std::vector<PurifiedSignal> out(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) { out[i] = purify(xs[i], params, derive_seed(master_seed, i)); });
  return out;
}

int defend(const LabelFunction& classifier, const SignalVector& x, const ReconstructionParams& params,
           std::uint64_t seed) {
  return classifier(purify(x, params, seed).value);
}

LabelFunction defended(LabelFunction classifier, ReconstructionParams params, std::uint64_t seed) {
  return [classifier = std::move(classifier), params = std::move(params), seed](const SignalVector& x) {
    return defend(classifier, x, params, seed);
  };
}

} // namespace rwkit
