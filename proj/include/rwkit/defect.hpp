#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwkit/frame.hpp"
#include "rwkit/sensing.hpp"
#include "rwkit/signal.hpp"

namespace rwkit {

struct DefectParams {
  /// Budget T of the solution set A = {a : ||Psi a||_1 <= T}.
  double solution_bound{1.0};
  /// Threshold of the split-Bregman pass (the starting point when calibrating).
  double bregman_lambda{0.5};
  /// Per-coefficient stationarity tolerance; the loop compares ||d_i - d_{i-1}||_1
  /// against tolerance * n.
  double tolerance{1e-6};
  std::size_t max_iterations{10000};
  /// When true, the threshold is bisected to the smallest value whose
  /// split-Bregman fixed point lies inside the budget. When false, a single
  /// pass runs at bregman_lambda and may end in the FAILED branch.
  bool calibrate_lambda{true};

  void validate() const;
};

struct DefectResult {
  /// ||Psi Phi^* Phi x - d||_1, or nullopt when the iterate left the budget (FAILED).
  std::optional<double> defect;
  /// Split-Bregman iterations, summed over all passes.
  std::size_t iterations{0};
  /// ||d||_1 at exit.
  double final_l1{0.0};
  /// Threshold of the pass that produced the result.
  double lambda{0.0};

  bool failed() const noexcept { return !defect.has_value(); }
};

/// One split-Bregman pass on the coefficient vector z = Psi Phi^* Phi x:
///   d_0 = z, b_0 = 0, d_{-1} = 0;
///   while ||d_i - d_{i-1}||_1 > tolerance:
///     u = S_lambda(d_i - b_i - z) + z;  d_{i+1} = S_lambda(u + b_i);  b_{i+1} = b_i + u - d_{i+1}
/// Returns ||z - d||_1 if ||d||_1 <= T, FAILED otherwise. `tolerance` is absolute here.
/// Throws IterationCapError if the loop does not settle within max_iterations.
DefectResult bregman_pass(std::span<const Complex> z, double solution_bound, double lambda, double tolerance,
                          std::size_t max_iterations);

/// Sparsity defect of x measured through Phi: inf over ||Psi a||_1 <= T of ||Psi(Phi^* Phi x - a)||_1.
DefectResult sparsity_defect(const SignalVector& x, const SensingOperator& op, const Frame& frame,
                             const DefectParams& params);

/// Same, on coefficients that are already in the frame domain.
DefectResult sparsity_defect_coefficients(std::span<const Complex> z, const DefectParams& params);

/// Exhaustive minimum of ||x - a||_1 over grid points a in {k * grid_step} with ||a||_1 <= T.
/// Refuses dimensions above 3.
double brute_force_defect(std::span<const double> x, double solution_bound, double grid_step);

struct ExpectedDefect {
  /// Mean over operators of the per-operator maximum defect.
  double estimate{0.0};
  std::vector<double> per_operator_max;
  std::size_t failed_instances{0};
  std::size_t operators_used{0};
};

/// Monte-Carlo estimate of E_Phi[max_x defect(x; Phi)] over `num_operators`
/// partial Fourier draws seeded derive_seed(master_seed, i). FAILED instances
/// are skipped and counted; an operator with no usable sample is dropped.
/// Throws EstimationError when every instance fails.
ExpectedDefect expected_defect(std::span<const SignalVector> samples, const Frame& frame, const DefectParams& params,
                               double subsample_prob, std::size_t num_operators, std::uint64_t master_seed,
                               std::size_t threads = 1);

} // namespace rwkit
