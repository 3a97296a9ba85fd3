#include "rwkit/classifier.hpp"

#include <cmath>

#include "rwkit/rng.hpp"

namespace rwkit {

LinearClassifier::LinearClassifier(RealVector weights) : weights_(std::move(weights)), support_(weights_.size()) {
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      throw ParameterError("classifier: non-finite weight");
    }
    support_[i] = weights_[i] != 0.0 ? 1 : 0;
    s += weights_[i] * weights_[i];
  }
  if (s == 0.0) {
    throw ParameterError("classifier: weight vector must be nonzero");
  }
  norm_ = std::sqrt(s);
}

double LinearClassifier::score(const SignalVector& x) const {
  if (x.size() != weights_.size()) {
    throw ShapeError("classifier: signal has " + std::to_string(x.size()) + " entries, weights have " +
                     std::to_string(weights_.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    s += weights_[i] * x[i].real();
  }
  return s;
}

int predict(const LinearClassifier& clf, const SignalVector& x) { return clf(x); }

double margin(const LinearClassifier& clf, const SignalVector& x) {
  return std::abs(clf.score(x)) / clf.weight_norm();
}

SignalVector min_perturbation(const LinearClassifier& clf, const SignalVector& x) {
  const double scale = -clf.score(x) / (clf.weight_norm() * clf.weight_norm());
  const auto& w = clf.weights();
  ComplexVector delta(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    delta[i] = scale * w[i];
  }
  return {x.shape(), std::move(delta)};
}

SignalVector apply_support_mask(const LinearClassifier& clf, const SignalVector& x) {
  if (x.size() != clf.weights().size()) {
    throw ShapeError("classifier: signal and mask lengths differ");
  }
  ComplexVector out(x.values());
  const auto& m = clf.support_mask();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (m[i] == 0) {
      out[i] = Complex{0.0, 0.0};
    }
  }
  return {x.shape(), std::move(out)};
}

Certificate linear_certificate(const LinearClassifier& clf, const SignalVector& x, double alpha) {
  if (!(alpha > 2.0)) {
    throw ParameterError("classifier: a robustness gain needs alpha > 2, since kappa = 2/alpha must be below 1");
  }
  const double tau = margin(clf, x);
  Certificate cert;
  cert.radius = alpha * tau / 2.0;
  cert.probability = 1.0;
  cert.gain = alpha / 2.0;
  cert.inputs = {alpha, 0.0, tau, 1.0, 0.0, cert.radius};
  return cert;
}

std::optional<Certificate> linear_certificate_approx(const LinearClassifier& clf, const SignalVector& x, double alpha,
                                                     double rho, double defect) {
  if (!(alpha > 2.0)) {
    throw ParameterError("classifier: a robustness gain needs alpha > 2, since kappa = 2/alpha must be below 1");
  }
  if (!(rho > 0.0) || !(defect >= 0.0)) {
    throw ParameterError("classifier: rho must be positive and the defect nonnegative");
  }
  const double tau = margin(clf, x);
  if (!(tau > 4.0 * rho * defect)) {
    return std::nullopt;
  }
  Certificate cert;
  cert.radius = alpha / 2.0 * (tau - 4.0 * rho * defect);
  cert.probability = 1.0;
  cert.gain = robustness_gain(kappa(cert.radius, alpha, rho, defect));
  cert.inputs = {alpha, rho, tau, 1.0, defect, cert.radius};
  return cert;
}

SignalVector worst_case_direction(const LinearClassifier& clf, const SignalVector& x) {
  const double s = clf.score(x);
  const double sign = s >= 0.0 ? -1.0 : 1.0;
  const auto& w = clf.weights();
  ComplexVector d(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    d[i] = sign * w[i] / clf.weight_norm();
  }
  return {x.shape(), std::move(d)};
}

LabelFunction as_label_function(const LinearClassifier& clf) {
  return [clf](const SignalVector& x) { return clf(x); };
}

namespace {

SignalVector normalized(const SignalVector& d) {
  const double n = d.norm2();
  if (!(n > 0.0)) {
    throw ParameterError("radius: probe direction must be nonzero");
  }
  return d * (1.0 / n);
}

} // namespace

RadiusMeasurement empirical_robust_radius(const LabelFunction& pipeline, const SignalVector& x,
                                          const ProbeOptions& options) {
  if (options.probes < 1) {
    throw ParameterError("radius: need at least one probe");
  }
  if (!(options.tol > 0.0) || !(options.ceiling > options.tol)) {
    throw ParameterError("radius: need 0 < tol < ceiling");
  }

  std::vector<SignalVector> dirs;
  dirs.reserve(options.directions.size() + options.probes);
  for (const auto& d : options.directions) {
    if (!(d.shape() == x.shape())) {
      throw ShapeError("radius: probe direction shape differs from the signal");
    }
    dirs.push_back(normalized(d));
  }
  Rng rng(options.seed);
  for (std::size_t p = 0; p < options.probes; ++p) {
    RealVector g(x.size());
    for (auto& v : g) {
      v = rng.normal();
    }
    dirs.push_back(normalized(SignalVector(x.shape(), g)));
  }

  RadiusMeasurement out;
  const int label = pipeline(x);
  ++out.trials;

  auto flips_at = [&](double r) {
    for (const auto& d : dirs) {
      ++out.trials;
      if (pipeline(x + d * r) != label) {
        return true;
      }
    }
    return false;
  };

  double lo = 0.0;
  double hi = options.tol;
  while (!flips_at(hi)) {
    lo = hi;
    if (hi >= options.ceiling) {
      out.radius = options.ceiling;
      out.upper = options.ceiling;
      out.bracketed = false;
      return out;
    }
    hi = std::min(2.0 * hi, options.ceiling);
  }
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    if (flips_at(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.radius = lo;
  out.upper = hi;
  return out;
}

RadiusMeasurement undefended_radius(const LinearClassifier& clf, const SignalVector& x, ProbeOptions options) {
  options.directions.insert(options.directions.begin(), worst_case_direction(clf, x));
  RadiusMeasurement m = empirical_robust_radius(as_label_function(clf), x, options);
  m.method = RadiusMethod::closed_form;
  return m;
}

} // namespace rwkit
