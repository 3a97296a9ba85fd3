#include "rwkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rwkit/error.hpp"

namespace rwkit {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string("certify: ") + name + " must be positive and finite");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string("certify: ") + name + " must be nonnegative and finite");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

double kappa(double epsilon, double alpha, double rho, double max_defect) {
  require_nonnegative(epsilon, "epsilon");
  require_positive(alpha, "alpha");
  require_positive(rho, "rho");
  require_nonnegative(max_defect, "max_defect");
  if (max_defect == 0.0) {
    return 2.0 / alpha;
  }
  if (epsilon == 0.0) {
    throw ParameterError("certify: kappa is undefined at epsilon = 0 with a positive sparsity defect");
  }
  return 2.0 / alpha + 4.0 * rho * max_defect / epsilon;
}

double performance_bound(double epsilon, double alpha, double rho, double max_defect) {
  return epsilon * kappa(epsilon, alpha, rho, max_defect);
}

double defect_budget(double tau, double epsilon, double alpha, double rho) {
  require_nonnegative(tau, "tau");
  require_nonnegative(epsilon, "epsilon");
  require_positive(alpha, "alpha");
  require_positive(rho, "rho");
  if (!(alpha * tau > 2.0 * epsilon)) {
    throw InfeasibleError("certify: need alpha * tau > 2 * epsilon (alpha*tau = " + fmt(alpha * tau) +
                          ", 2*epsilon = " + fmt(2.0 * epsilon) + ")");
  }
  return (tau - 2.0 * epsilon / alpha) / (4.0 * rho);
}

Certificate certify_probabilistic(double rwp_prob, double alpha, double rho, double tau, double epsilon,
                                  double expected_defect) {
  if (!(rwp_prob >= 0.0 && rwp_prob <= 1.0)) {
    throw ParameterError("certify: rwp_prob must lie in [0, 1]");
  }
  require_positive(alpha, "alpha");
  require_positive(rho, "rho");
  require_nonnegative(tau, "tau");
  require_nonnegative(epsilon, "epsilon");
  require_nonnegative(expected_defect, "expected_defect");
  const double slack = alpha * tau - 2.0 * epsilon;
  if (!(slack > 0.0)) {
    throw InfeasibleError("certify: need alpha * tau > 2 * epsilon (alpha*tau = " + fmt(alpha * tau) +
                          ", 2*epsilon = " + fmt(2.0 * epsilon) + ")");
  }

  Certificate cert;
  const double raw = rwp_prob - 4.0 * alpha * rho * expected_defect / slack;
  cert.vacuous = raw < 0.0;
  cert.probability = std::clamp(raw, 0.0, 1.0);
  cert.radius = epsilon;
  if (expected_defect > 0.0 && epsilon == 0.0) {
    cert.gain = 0.0;
  } else {
    cert.gain = robustness_gain(kappa(epsilon, alpha, rho, expected_defect));
  }
  cert.inputs = {alpha, rho, tau, rwp_prob, expected_defect, epsilon};
  return cert;
}

double robustness_gain(double kappa_value) {
  if (!(kappa_value > 0.0)) {
    throw ParameterError("certify: kappa must be positive to define a robustness gain");
  }
  return 1.0 / kappa_value;
}

RwpParameters partial_fourier_rwp(double sparsity, double delta) {
  if (!(sparsity >= 1.0)) {
    throw ParameterError("certify: RIP sparsity J must be at least 1");
  }
  if (!(delta >= 0.0 && delta < 1.0 / 3.0)) {
    throw ParameterError("certify: RIP constant delta must lie in [0, 1/3)");
  }
  return RwpParameters(3.0 / std::sqrt(sparsity), 1.0 / 3.0 - delta);
}

RipParameters partial_fourier_rip(double rho, double alpha) {
  require_positive(rho, "rho");
  if (!(alpha > 0.0 && alpha < 1.0 / 3.0)) {
    throw ParameterError("certify: alpha must lie in (0, 1/3) for a partial Fourier RWP");
  }
  return {9.0 / (rho * rho), 1.0 / 3.0 - alpha};
}

double rwp_probability_exponent(std::size_t dimension, double rho, double alpha) {
  if (dimension < 2) {
    throw ParameterError("certify: dimension must be at least 2");
  }
  require_positive(rho, "rho");
  if (!(alpha < 1.0 / 3.0)) {
    throw ParameterError("certify: alpha must be below 1/3");
  }
  return std::log(static_cast<double>(dimension)) * (std::log(9.0) - std::log(rho * rho * (1.0 / 3.0 - alpha)));
}

std::string to_record(const Certificate& cert) {
  std::ostringstream os;
  os << "radius=" << fmt(cert.radius) << '\n'
     << "probability=" << fmt(cert.probability) << '\n'
     << "gain=" << fmt(cert.gain) << '\n'
     << "vacuous=" << (cert.vacuous ? "true" : "false") << '\n'
     << "alpha=" << fmt(cert.inputs.alpha) << '\n'
     << "rho=" << fmt(cert.inputs.rho) << '\n'
     << "tau=" << fmt(cert.inputs.tau) << '\n'
     << "rwp_prob=" << fmt(cert.inputs.rwp_prob) << '\n'
     << "expected_defect=" << fmt(cert.inputs.expected_defect) << '\n'
     << "epsilon=" << fmt(cert.inputs.epsilon) << '\n';
  return os.str();
}

} // namespace rwkit
