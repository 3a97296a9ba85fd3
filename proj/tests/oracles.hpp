#pragma once

// Test-only reference implementations. Nothing here calls into the FFT,
// frame or solver code it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "rwkit/rng.hpp"
#include "rwkit/signal.hpp"

namespace oracle {

using rwkit::Complex;
using rwkit::ComplexVector;

/// Unitary DFT by the defining sum.
inline ComplexVector naive_dft(const ComplexVector& x, bool inverse = false) {
  const std::size_t n = x.size();
  ComplexVector out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * k) % n) /
                            static_cast<long double>(n);
      re += x[j].real() * std::cos(a) - x[j].imag() * std::sin(a);
      im += x[j].real() * std::sin(a) + x[j].imag() * std::cos(a);
    }
    out[k] = Complex(static_cast<double>(re), static_cast<double>(im)) / std::sqrt(static_cast<double>(n));
  }
  return out;
}

/// One level of the orthonormal Haar filter bank written out pairwise:
/// approx_k = (x_{2k} + x_{2k+1}) / sqrt 2, detail_k = (x_{2k} - x_{2k+1}) / sqrt 2.
inline ComplexVector haar_level1(const ComplexVector& x) {
  const std::size_t half = x.size() / 2;
  ComplexVector out(x.size());
  for (std::size_t k = 0; k < half; ++k) {
    out[k] = (x[2 * k] + x[2 * k + 1]) / std::numbers::sqrt2;
    out[half + k] = (x[2 * k] - x[2 * k + 1]) / std::numbers::sqrt2;
  }
  return out;
}

/// Rows of the unitary DFT matrix selected by `mask`, built entry by entry.
inline std::vector<ComplexVector> partial_dft_rows(const std::vector<std::uint8_t>& mask) {
  const std::size_t n = mask.size();
  std::vector<ComplexVector> rows;
  for (std::size_t k = 0; k < n; ++k) {
    if (!mask[k]) {
      continue;
    }
    ComplexVector row(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      row[j] = Complex(std::cos(a), std::sin(a)) / std::sqrt(static_cast<double>(n));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Basis pursuit min ||u||_1 s.t. A u = b for a matrix with orthonormal rows
/// (A A^* = I), solved by Douglas-Rachford splitting on the explicit matrix.
inline ComplexVector basis_pursuit(const std::vector<ComplexVector>& rows, const ComplexVector& b, std::size_t n,
                                   std::size_t iterations = 3000, double gamma = 0.05) {
  auto project = [&](const ComplexVector& v) {
    ComplexVector out(v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Complex resid = b[r];
      for (std::size_t j = 0; j < n; ++j) {
        resid -= rows[r][j] * v[j];
      }
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += std::conj(rows[r][j]) * resid;
      }
    }
    return out;
  };
  auto shrink = [&](const ComplexVector& v) {
    ComplexVector out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double m = std::abs(v[j]);
      out[j] = m <= gamma ? Complex{} : v[j] * ((m - gamma) / m);
    }
    return out;
  };
  ComplexVector z(n);
  for (std::size_t it = 0; it < iterations; ++it) {
    const ComplexVector p = project(z);
    ComplexVector reflected(n);
    for (std::size_t j = 0; j < n; ++j) {
      reflected[j] = 2.0 * p[j] - z[j];
    }
    const ComplexVector s = shrink(reflected);
    for (std::size_t j = 0; j < n; ++j) {
      z[j] += s[j] - p[j];
    }
  }
  return project(z);
}

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
      ++j;
    }
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      r[idx[k]] = avg;
    }
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline rwkit::ComplexVector random_complex(rwkit::Rng& rng, std::size_t n) {
  rwkit::ComplexVector v(n);
  for (auto& c : v) {
    c = {rng.normal(), rng.normal()};
  }
  return v;
}

inline rwkit::RealVector random_real(rwkit::Rng& rng, std::size_t n) {
  rwkit::RealVector v(n);
  for (auto& c : v) {
    c = rng.normal();
  }
  return v;
}

/// Length-n signal with `k` entries of +-1 at distinct random positions.
inline rwkit::RealVector unit_sparse(rwkit::Rng& rng, std::size_t n, std::size_t k) {
  rwkit::RealVector x(n, 0.0);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(perm[i], perm[i + rng.below(n - i)]);
    x[perm[i]] = rng.bernoulli(0.5) ? 1.0 : -1.0;
  }
  return x;
}

} // namespace oracle
