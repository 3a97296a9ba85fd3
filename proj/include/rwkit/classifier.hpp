#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rwkit/certify.hpp"
#include "rwkit/reconstruct.hpp"
#include "rwkit/signal.hpp"

namespace rwkit {

/// f(x) = sgn(<w, Re x>) with sgn(0) = +1.
class LinearClassifier {
public:
  /// Throws ParameterError for an all-zero or non-finite weight vector.
  explicit LinearClassifier(RealVector weights);

  const RealVector& weights() const noexcept { return weights_; }
  /// m_i = 1 iff w_i != 0.
  const std::vector<std::uint8_t>& support_mask() const noexcept { return support_; }
  double weight_norm() const noexcept { return norm_; }

  double score(const SignalVector& x) const;
  int operator()(const SignalVector& x) const { return score(x) >= 0.0 ? 1 : -1; }

private:
  RealVector weights_;
  std::vector<std::uint8_t> support_;
  double norm_{0.0};
};

int predict(const LinearClassifier& clf, const SignalVector& x);

/// |<w, x>| / ||w||_2: the exact L2 distance to the decision boundary.
double margin(const LinearClassifier& clf, const SignalVector& x);

/// delta* = -<w, x> w / ||w||_2^2, the smallest perturbation reaching the boundary.
SignalVector min_perturbation(const LinearClassifier& clf, const SignalVector& x);

/// m (.) x for the classifier's support mask.
SignalVector apply_support_mask(const LinearClassifier& clf, const SignalVector& x);

/// For exactly sparse x: radius alpha * margin / 2, gain alpha / 2.
/// Throws ParameterError unless alpha > 2.
Certificate linear_certificate(const LinearClassifier& clf, const SignalVector& x, double alpha);

/// For approximately sparse x: radius (alpha/2)(margin - 4 rho defect), gain 1/kappa(radius).
/// Returns nullopt when margin <= 4 rho defect. Throws ParameterError unless alpha > 2.
std::optional<Certificate> linear_certificate_approx(const LinearClassifier& clf, const SignalVector& x, double alpha,
                                                     double rho, double defect);

enum class RadiusMethod { closed_form, bisection_random_probe };

struct RadiusMeasurement {
  /// Largest probed radius at which no flip occurred.
  double radius{0.0};
  /// Smallest probed radius at which a flip occurred (ceiling when unbracketed).
  double upper{0.0};
  std::size_t trials{0};
  RadiusMethod method{RadiusMethod::bisection_random_probe};
  /// False when no flip was found up to the ceiling.
  bool bracketed{true};
};

struct ProbeOptions {
  std::size_t probes{200};
  double tol{1e-3};
  std::uint64_t seed{0};
  /// Doubling stops here; reaching it without a flip leaves the measurement unbracketed.
  double ceiling{1e3};
  /// Extra directions probed at every radius before the random ones (normalized internally).
  std::vector<SignalVector> directions;
};

/// Bisection on the perturbation radius. At radius r the pipeline is evaluated
/// at x + r d for every extra direction d and for `probes` random unit
/// directions (uniform on the sphere, drawn once from `seed` and reused at
/// every radius). An upper bracket is first found by doubling from `tol`.
RadiusMeasurement empirical_robust_radius(const LabelFunction& pipeline, const SignalVector& x,
                                          const ProbeOptions& options);

/// empirical_robust_radius of the bare classifier with its closed-form
/// worst-case direction added to the probes, which makes it exact to `tol`.
RadiusMeasurement undefended_radius(const LinearClassifier& clf, const SignalVector& x, ProbeOptions options);

/// Unit vector along min_perturbation, or -w/||w|| for points on the boundary.
SignalVector worst_case_direction(const LinearClassifier& clf, const SignalVector& x);

LabelFunction as_label_function(const LinearClassifier& clf);

} // namespace rwkit
