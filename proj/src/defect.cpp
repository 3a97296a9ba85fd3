#include "rwkit/defect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwkit/parallel.hpp"
#include "rwkit/rng.hpp"

namespace rwkit {

void DefectParams::validate() const {
  if (!(solution_bound > 0.0)) {
    throw ParameterError("defect: solution bound T must be positive");
  }
  if (!(bregman_lambda > 0.0)) {
    throw ParameterError("defect: Bregman lambda must be positive");
  }
  if (!(tolerance > 0.0)) {
    throw ParameterError("defect: tolerance must be positive");
  }
  if (max_iterations < 1) {
    throw ParameterError("defect: max_iterations must be at least 1");
  }
}

DefectResult bregman_pass(std::span<const Complex> z, double solution_bound, double lambda, double tolerance,
                          std::size_t max_iterations) {
  const std::size_t n = z.size();
  ComplexVector d(z.begin(), z.end());
  ComplexVector d_prev(n);
  ComplexVector b(n);
  ComplexVector u(n);

  auto step_size = [&] {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += std::abs(d[k] - d_prev[k]);
    }
    return s;
  };

  std::size_t i = 0;
  while (step_size() > tolerance) {
    if (i == max_iterations) {
      throw IterationCapError("defect: split-Bregman did not settle within " + std::to_string(max_iterations) +
                              " iterations");
    }
    for (std::size_t k = 0; k < n; ++k) {
      u[k] = soft_threshold(d[k] - b[k] - z[k], lambda) + z[k];
    }
    d_prev = d;
    for (std::size_t k = 0; k < n; ++k) {
      d[k] = soft_threshold(u[k] + b[k], lambda);
      b[k] += u[k] - d[k];
      if (!std::isfinite(d[k].real()) || !std::isfinite(d[k].imag())) {
        throw NumericError("defect: non-finite iterate", i + 1);
      }
    }
    ++i;
  }

  DefectResult result;
  result.iterations = i;
  result.lambda = lambda;
  result.final_l1 = norm1(d);
  if (result.final_l1 <= solution_bound) {
    double distance = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      distance += std::abs(z[k] - d[k]);
    }
    result.defect = distance;
  }
  return result;
}

DefectResult sparsity_defect_coefficients(std::span<const Complex> z, const DefectParams& params) {
  params.validate();
  const double tol = params.tolerance * static_cast<double>(std::max<std::size_t>(z.size(), 1));
  const double T = params.solution_bound;
  if (!params.calibrate_lambda) {
    return bregman_pass(z, T, params.bregman_lambda, tol, params.max_iterations);
  }

  std::size_t total_iterations = 0;
  auto run = [&](double lambda) {
    DefectResult r = bregman_pass(z, T, lambda, tol, params.max_iterations);
    total_iterations += r.iterations;
    return r;
  };

  // The pass settles on d = S_lambda(z), whose l1 norm falls continuously
  // from ||z||_1 to 0 as lambda grows, so feasibility is monotone in lambda.
  if (norm1(z) <= T) {
    DefectResult r = run(0.0);
    r.iterations = total_iterations;
    return r;
  }
  double peak = 0.0;
  for (const auto& v : z) {
    peak = std::max(peak, std::abs(v));
  }

  double lo = 0.0;
  double hi = 0.0;
  DefectResult best;
  DefectResult first = run(params.bregman_lambda);
  if (!first.failed()) {
    hi = params.bregman_lambda;
    best = first;
  } else {
    lo = params.bregman_lambda;
    hi = std::max(peak, params.bregman_lambda);
    best = run(hi);
  }
  while (hi - lo > params.tolerance) {
    const double mid = 0.5 * (lo + hi);
    DefectResult r = run(mid);
    if (r.failed()) {
      lo = mid;
    } else {
      hi = mid;
      best = r;
    }
  }
  if (best.failed()) {
    throw NumericError("defect: calibration ended without a feasible iterate", total_iterations);
  }
  best.iterations = total_iterations;
  return best;
}

DefectResult sparsity_defect(const SignalVector& x, const SensingOperator& op, const Frame& frame,
                             const DefectParams& params) {
  frame.check_compatible(x.shape());
  ComplexVector z = op.apply(x);
  op.adjoint_inplace(z);
  analyze_inplace(frame, z, x.shape());
  return sparsity_defect_coefficients(z, params);
}

double brute_force_defect(std::span<const double> x, double solution_bound, double grid_step) {
  if (x.empty() || x.size() > 3) {
    throw ShapeError("brute_force_defect: dimension must be 1, 2 or 3");
  }
  if (!(grid_step > 0.0) || !(solution_bound >= 0.0)) {
    throw ParameterError("brute_force_defect: grid step must be positive and T nonnegative");
  }
  const long k_max = static_cast<long>(std::floor(solution_bound / grid_step + 1e-9));
  const std::size_t dim = x.size();
  double best = std::numeric_limits<double>::infinity();
  long idx[3] = {0, 0, 0};
  const long span = 2 * k_max + 1;
  long total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= span;
  }
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    double ball = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      idx[i] = rest % span - k_max;
      rest /= span;
      ball += std::abs(static_cast<double>(idx[i]) * grid_step);
    }
    if (ball > solution_bound + 1e-12) {
      continue;
    }
    double dist = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      dist += std::abs(x[i] - static_cast<double>(idx[i]) * grid_step);
    }
    best = std::min(best, dist);
  }
  return best;
}

ExpectedDefect expected_defect(std::span<const SignalVector> samples, const Frame& frame, const DefectParams& params,
                               double subsample_prob, std::size_t num_operators, std::uint64_t master_seed,
                               std::size_t threads) {
  if (num_operators < 1) {
    throw ParameterError("expected_defect: need at least one operator draw");
  }
  if (samples.empty()) {
    throw ParameterError("expected_defect: no samples");
  }
  const Shape shape = samples.front().shape();
  for (const auto& s : samples) {
    if (!(s.shape() == shape)) {
      throw ShapeError("expected_defect: samples have different shapes");
    }
  }

  struct PerOperator {
    std::optional<double> max_defect;
    std::size_t failed{0};
  };
  std::vector<PerOperator> per(num_operators);
  parallel_for(num_operators, threads, [&](std::size_t i) {
    const SensingOperator op = make_partial_fourier(shape, subsample_prob, derive_seed(master_seed, i));
    PerOperator acc;
    for (const auto& x : samples) {
      const DefectResult r = sparsity_defect(x, op, frame, params);
      if (r.failed()) {
        ++acc.failed;
      } else {
        acc.max_defect = std::max(acc.max_defect.value_or(0.0), *r.defect);
      }
    }
    per[i] = acc;
  });

  ExpectedDefect out;
  double sum = 0.0;
  for (const auto& p : per) {
    out.failed_instances += p.failed;
    if (p.max_defect) {
      sum += *p.max_defect;
      out.per_operator_max.push_back(*p.max_defect);
      ++out.operators_used;
    }
  }
  if (out.operators_used == 0) {
    throw EstimationError("expected_defect: every split-Bregman instance failed");
  }
  out.estimate = sum / static_cast<double>(out.operators_used);
  return out;
}

} // namespace rwkit
