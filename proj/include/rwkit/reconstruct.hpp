#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rwkit/frame.hpp"
#include "rwkit/sensing.hpp"
#include "rwkit/signal.hpp"

namespace rwkit {

struct ReconstructionParams {
  std::size_t iterations{1};
  double threshold{0.0};
  double subsample_prob{1.0};
  Frame frame{};

  /// Throws ParameterError unless iterations >= 1, threshold >= 0 and q in [0, 1].
  void validate() const;
};

struct PurifiedSignal {
  SignalVector value;
  std::uint64_t operator_seed{0};
  std::size_t iterations_run{0};
  /// ||u_T||_1 of the final coefficient iterate.
  double final_coefficient_l1{0.0};
  /// max |Im| of the reconstruction that was discarded for a real input; 0 otherwise.
  double imag_residual{0.0};
};

/// Runs exactly `params.iterations` steps of
///   u_t = S_lambda(u_{t-1} + Psi Phi^*(y - Phi Psi^{-1} u_{t-1})),  u_0 = 0,
/// with unit step size, and returns u_T. Throws NumericError naming the
/// iteration if a non-finite coefficient appears.
ComplexVector ista_coefficients(std::span<const Complex> y, const SensingOperator& op,
                                const ReconstructionParams& params);

/// Psi^{-1} u_T.
SignalVector ista_reconstruct(std::span<const Complex> y, const SensingOperator& op,
                              const ReconstructionParams& params);

/// Samples Phi from `seed`, measures y = Phi x and reconstructs. Real inputs
/// yield a real output; the dropped imaginary part is reported.
PurifiedSignal purify(const SignalVector& x, const ReconstructionParams& params, std::uint64_t seed);

/// Same pipeline with a caller-supplied operator.
PurifiedSignal purify_with(const SignalVector& x, const SensingOperator& op, const ReconstructionParams& params);

/// Purifies `xs[i]` with seed derive_seed(master_seed, i) on up to `threads`
/// workers; the result does not depend on the thread count.
std::vector<PurifiedSignal> purify_batch(std::span<const SignalVector> xs, const ReconstructionParams& params,
                                         std::uint64_t master_seed, std::size_t threads = 1);

using LabelFunction = std::function<int(const SignalVector&)>;

/// classifier(purify(x).value)
int defend(const LabelFunction& classifier, const SignalVector& x, const ReconstructionParams& params,
           std::uint64_t seed);

/// Label function of the defended pipeline with a fixed seed.
LabelFunction defended(LabelFunction classifier, ReconstructionParams params, std::uint64_t seed);

} // namespace rwkit
