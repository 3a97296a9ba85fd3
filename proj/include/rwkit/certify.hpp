#pragma once

#include <cstddef>
#include <string>

#include "rwkit/sensing.hpp"

namespace rwkit {

/// Parameters a certificate was computed from.
struct CertificateInputs {
  double alpha{0.0};
  double rho{0.0};
  double tau{0.0};
  double rwp_prob{1.0};
  double expected_defect{0.0};
  double epsilon{0.0};
};

struct Certificate {
  /// Certified L2 perturbation radius.
  double radius{0.0};
  /// Lower bound on the probability that the certificate holds, clamped to [0, 1].
  double probability{1.0};
  /// Lower bound on the robustness gain; the tight improved bound is never computed.
  double gain{0.0};
  /// Set when the raw probability bound was negative and clamped to 0.
  bool vacuous{false};
  CertificateInputs inputs;
};

/// kappa(eps) = 2/alpha + (4 rho / eps) * max_defect. With max_defect = 0 the
/// second term is dropped, so eps = 0 is accepted in that case only.
double kappa(double epsilon, double alpha, double rho, double max_defect);

/// C(eps) = eps * kappa(eps) = 2 eps / alpha + 4 rho max_defect.
double performance_bound(double epsilon, double alpha, double rho, double max_defect);

/// Largest max-defect keeping C(eps) <= tau: (tau - 2 eps / alpha) / (4 rho).
/// Throws InfeasibleError unless alpha * tau > 2 eps.
double defect_budget(double tau, double epsilon, double alpha, double rho);

/// Probabilistic certificate: probability >= q - 4 alpha rho E / (alpha tau - 2 eps),
/// radius eps, gain 1 / kappa(eps) with E standing in for the max defect.
Certificate certify_probabilistic(double rwp_prob, double alpha, double rho, double tau, double epsilon,
                                  double expected_defect);

/// 1 / kappa; ParameterError unless kappa > 0.
double robustness_gain(double kappa_value);

/// RIP parameters of a random partial Fourier matrix: sparsity J and constant delta.
struct RipParameters {
  double sparsity{0.0};
  double delta{0.0};
};

/// RIP (J, delta) implies the RWP with rho = 3 / sqrt(J), alpha = 1/3 - delta.
/// Requires J >= 1 and 0 <= delta < 1/3. The returned rwp_prob is empty: the
/// success probability is only known up to unstated constants.
RwpParameters partial_fourier_rwp(double sparsity, double delta);

/// Inverse map: J = 9 / rho^2, delta = 1/3 - alpha. Requires 0 < alpha < 1/3.
RipParameters partial_fourier_rip(double rho, double alpha);

/// log N * (log 9 - log(rho^2 (1/3 - alpha))): exponent of the RWP failure
/// probability 2^{-Omega(.)} with unit constants. Comparative diagnostic only.
double rwp_probability_exponent(std::size_t dimension, double rho, double alpha);

std::string to_record(const Certificate& cert);

} // namespace rwkit
