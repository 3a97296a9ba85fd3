#pragma once

// Hand-worked certification and linear-classifier values, shared by the unit
// tests and the acceptance runner. Each entry pairs a computed value with the
// value worked out by hand.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rwkit/certify.hpp"
#include "rwkit/classifier.hpp"

namespace arith {

struct Example {
  std::string name;
  double got;
  double expected;
};

template <class Fn>
bool throws(Fn&& fn) {
  try {
    fn();
  } catch (const rwkit::Error&) {
    return true;
  }
  return false;
}

inline std::vector<Example> examples() {
  using namespace rwkit;
  const auto vec = [](std::vector<double> v) { return SignalVector::from_real(v); };
  const auto flag = [](bool b) { return b ? 1.0 : 0.0; };
  std::vector<Example> out;
  auto add = [&](std::string name, double got, double expected) { out.push_back({std::move(name), got, expected}); };

  add("kappa alpha=4 zero defect", kappa(0.1, 4.0, 0.05, 0.0), 0.5);
  add("kappa alpha=2 zero defect", kappa(0.1, 2.0, 0.05, 0.0), 1.0);
  add("kappa eps=0.1 alpha=4 rho=0.05 defect=0.2", kappa(0.1, 4.0, 0.05, 0.2), 0.9);
  add("kappa eps=0 with defect refused", flag(throws([] { (void)kappa(0.0, 4.0, 0.05, 0.2); })), 1.0);

  add("C eps=0.1 alpha=4 zero defect", performance_bound(0.1, 4.0, 0.05, 0.0), 0.05);
  add("C eps=0.1 alpha=4 rho=0.05 defect=0.2", performance_bound(0.1, 4.0, 0.05, 0.2), 0.09);
  add("C decreasing toward 0 in alpha",
      flag(performance_bound(0.1, 10.0, 0.05, 0.0) > performance_bound(0.1, 100.0, 0.05, 0.0) &&
           performance_bound(0.1, 100.0, 0.05, 0.0) > performance_bound(0.1, 1000.0, 0.05, 0.0) &&
           performance_bound(0.1, 1000.0, 0.05, 0.0) <= 2e-4),
      1.0);

  add("budget tau=0.5 eps=0.2 alpha=4 rho=0.05", defect_budget(0.5, 0.2, 4.0, 0.05), 2.0);
  add("budget at tau*alpha = 2 eps refused", flag(throws([] { (void)defect_budget(0.1, 0.2, 4.0, 0.05); })), 1.0);
  add("budget increasing in tau", flag(defect_budget(0.6, 0.2, 4.0, 0.05) > defect_budget(0.5, 0.2, 4.0, 0.05)), 1.0);
  add("budget decreasing in rho", flag(defect_budget(0.5, 0.2, 4.0, 0.1) < defect_budget(0.5, 0.2, 4.0, 0.05)), 1.0);

  add("probability equals q at zero expected defect", certify_probabilistic(0.99, 4.0, 0.05, 0.5, 0.2, 0.0).probability,
      0.99);
  add("probability q=0.99 alpha=4 rho=0.05 tau=0.5 eps=0.2 E=0.1",
      certify_probabilistic(0.99, 4.0, 0.05, 0.5, 0.2, 0.1).probability, 0.94);
  {
    const auto c = certify_probabilistic(0.99, 4.0, 0.05, 0.5, 0.2, 100.0);
    add("large expected defect clamps to 0", c.probability, 0.0);
    add("large expected defect is flagged vacuous", flag(c.vacuous), 1.0);
  }
  {
    const auto c = certify_probabilistic(0.9, 4.0, 0.05, 0.5, 0.2, 0.1);
    add("certificate radius is epsilon", c.radius, 0.2);
    add("certificate gain is 1/kappa", c.gain, 1.0 / kappa(0.2, 4.0, 0.05, 0.1));
  }
  add("certificate refused when alpha*tau <= 2 eps",
      flag(throws([] { (void)certify_probabilistic(0.9, 4.0, 0.05, 0.1, 0.2, 0.0); })), 1.0);

  {
    const auto a = partial_fourier_rwp(9.0, 0.1);
    add("rwp J=9 delta=0.1 rho", a.rho, 1.0);
    add("rwp J=9 delta=0.1 alpha", a.alpha, 1.0 / 3.0 - 0.1);
    const auto b = partial_fourier_rwp(900.0, 0.0);
    add("rwp J=900 delta=0 rho", b.rho, 0.1);
    add("rwp J=900 delta=0 alpha", b.alpha, 1.0 / 3.0);
    const auto c = partial_fourier_rip(0.5, 0.1);
    add("rip inverse rho=0.5 alpha=0.1 J", c.sparsity, 36.0);
    add("rip inverse rho=0.5 alpha=0.1 delta", c.delta, 1.0 / 3.0 - 0.1);
    add("rwp delta=1/3 refused", flag(throws([] { (void)partial_fourier_rwp(9.0, 1.0 / 3.0); })), 1.0);
  }

  add("gain kappa=0.5", robustness_gain(0.5), 2.0);
  add("gain kappa=1", robustness_gain(1.0), 1.0);
  add("gain kappa=2/5 is alpha/2", robustness_gain(kappa(0.1, 5.0, 0.05, 0.0)), 2.5);
  add("gain kappa=0 refused", flag(throws([] { (void)robustness_gain(0.0); })), 1.0);

  const LinearClassifier e1(RealVector{1.0, 0.0});
  const LinearClassifier w34(RealVector{3.0, 4.0});
  add("predict w=(1,0) x=(2,3)", predict(e1, vec({2.0, 3.0})), 1.0);
  add("predict w=(1,0) x=(-2,3)", predict(e1, vec({-2.0, 3.0})), -1.0);
  add("predict on the boundary is +1", predict(e1, vec({0.0, 3.0})), 1.0);
  add("margin w=(1,0) x=(2,0)", margin(e1, vec({2.0, 0.0})), 2.0);
  add("margin on the boundary", margin(e1, vec({0.0, 5.0})), 0.0);
  add("margin w=(3,4) x=(1,1)", margin(w34, vec({1.0, 1.0})), 1.4);
  {
    const auto d = min_perturbation(e1, vec({2.0, 3.0}));
    add("min perturbation first entry", d[0].real(), -2.0);
    add("min perturbation second entry", d[1].real(), 0.0);
    add("min perturbation norm", d.norm2(), 2.0);
    add("min perturbation at the boundary", min_perturbation(e1, vec({0.0, 3.0})).norm2(), 0.0);
  }
  {
    const auto c = linear_certificate(e1, vec({2.0, 0.0}), 3.0);
    add("linear certificate radius", c.radius, 3.0);
    add("linear certificate gain", c.gain, 1.5);
    add("linear certificate at the boundary", linear_certificate(e1, vec({0.0, 1.0}), 3.0).radius, 0.0);
    add("linear certificate alpha=2 refused",
        flag(throws([&] { (void)linear_certificate(e1, vec({2.0, 0.0}), 2.0); })), 1.0);
  }
  {
    const auto exact = linear_certificate(w34, vec({1.0, 1.0}), 4.0);
    const auto approx0 = linear_certificate_approx(w34, vec({1.0, 1.0}), 4.0, 0.05, 0.0);
    add("approximate certificate with zero defect radius", approx0 ? approx0->radius : -1.0, exact.radius);
    add("approximate certificate with zero defect gain", approx0 ? approx0->gain : -1.0, exact.gain);
    const auto approx = linear_certificate_approx(w34, vec({1.0, 1.0}), 4.0, 0.05, 1.0);
    add("approximate certificate margin 1.4 alpha=4 rho=0.05 defect=1", approx ? approx->radius : -1.0, 2.4);
    add("approximate certificate gain is 1/kappa", approx ? approx->gain : -1.0,
        1.0 / kappa(2.4, 4.0, 0.05, 1.0));
    add("approximate certificate withheld when margin <= 4 rho defect",
        flag(!linear_certificate_approx(w34, vec({1.0, 1.0}), 4.0, 0.05, 7.0).has_value()), 1.0);
  }
  return out;
}

} // namespace arith
