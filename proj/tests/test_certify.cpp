#include <cmath>
#include <cstdio>

#include "arith_examples.hpp"
#include "doctest.h"
#include "rwkit/rng.hpp"

using namespace rwkit;

TEST_CASE("worked certification and classifier values") {
  for (const auto& ex : arith::examples()) {
    INFO(ex.name);
    CHECK(std::abs(ex.got - ex.expected) <= 1e-12);
  }
}

TEST_CASE("kappa monotonicity") {
  const double alphas[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  const double rhos[] = {0.01, 0.05, 0.1, 0.5};
  const double defects[] = {0.01, 0.1, 1.0, 5.0};
  for (double eps : {0.05, 0.2, 1.0}) {
    for (double r : rhos) {
      for (double e : defects) {
        for (int i = 0; i + 1 < 5; ++i) {
          CHECK(kappa(eps, alphas[i + 1], r, e) < kappa(eps, alphas[i], r, e));
        }
      }
    }
    for (double a : alphas) {
      for (double e : defects) {
        for (int i = 0; i + 1 < 4; ++i) {
          CHECK(kappa(eps, a, rhos[i + 1], e) > kappa(eps, a, rhos[i], e));
          CHECK(kappa(eps, a, e, defects[i + 1]) > kappa(eps, a, e, defects[i]));
        }
      }
    }
  }
}

TEST_CASE("performance bound identities") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const double eps = rng.uniform(0.01, 2.0);
    const double alpha = rng.uniform(0.1, 10.0);
    const double rho = rng.uniform(0.01, 1.0);
    const double e = rng.uniform(0.0, 3.0);
    CHECK(std::abs(performance_bound(eps, alpha, rho, e) / eps - kappa(eps, alpha, rho, e)) <= 1e-12);

    const double tau = rng.uniform(0.1, 5.0);
    if (alpha * tau > 2.0 * eps) {
      const double budget = defect_budget(tau, eps, alpha, rho);
      CHECK(std::abs(performance_bound(eps, alpha, rho, budget) - tau) <= 1e-12);
    } else {
      CHECK_THROWS_AS(defect_budget(tau, eps, alpha, rho), InfeasibleError);
    }
  }
}

TEST_CASE("probabilistic certificate behavior") {
  for (double q : {0.0, 0.5, 0.9, 1.0}) {
    CHECK(certify_probabilistic(q, 3.0, 0.05, 1.0, 0.1, 0.0).probability == q);
  }
  double previous = 0.0;
  for (double rho : {1.0, 0.1, 1e-3, 1e-6, 1e-9}) {
    const double p = certify_probabilistic(0.9, 3.0, rho, 1.0, 0.1, 0.5).probability;
    CHECK(p >= previous);
    previous = p;
  }
  CHECK(std::abs(previous - 0.9) < 1e-8);

  const auto cert = certify_probabilistic(0.99, 4.0, 0.05, 0.5, 0.2, 0.1);
  const std::string rec = to_record(cert);
  char expected[64];
  std::snprintf(expected, sizeof expected, "probability=%.17g\n", cert.probability);
  CHECK(rec.find(expected) != std::string::npos);
  CHECK(rec.find("vacuous=false") != std::string::npos);
}

TEST_CASE("partial Fourier mapping round trip") {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const double J = rng.uniform(1.0, 5000.0);
    const double delta = rng.uniform(0.0, 0.33);
    const auto rwp = partial_fourier_rwp(J, delta);
    const auto rip = partial_fourier_rip(rwp.rho, rwp.alpha);
    CHECK(std::abs(rip.sparsity - J) <= 1e-12 * J);
    CHECK(std::abs(rip.delta - delta) <= 1e-12);
  }
  CHECK_THROWS_AS(partial_fourier_rwp(0.5, 0.1), ParameterError);
  CHECK(rwp_probability_exponent(1024, 1.0, 0.2) > 0.0);
  CHECK(rwp_probability_exponent(1024, 0.5, 0.2) > rwp_probability_exponent(1024, 1.0, 0.2));
}
