#include "rwkit/frame.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "rwkit/fft.hpp"

namespace rwkit {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

constexpr std::array<double, 2> kHaarLow{kInvSqrt2, kInvSqrt2};

// Daubechies, 4 vanishing moments (8 taps), normalized to sum sqrt(2).
constexpr std::array<double, 8> kDb4Low{
    0.2303778133088965,   0.7148465705529157,  0.6308807679298589,  -0.027983769416859854,
    -0.18703481171909309, 0.030841381835560764, 0.0328830116668852, -0.010597401785069032};

std::span<const double> lowpass(FrameKind kind) {
  if (kind == FrameKind::haar) {
    return kHaarLow;
  }
  return kDb4Low;
}

// One periodized analysis step on the first `len` entries of a strided line:
// a[k] = sum_j h[j] x[2k+j], d[k] = sum_j g[j] x[2k+j], g[j] = (-1)^j h[L-1-j].
void dwt_step(std::span<const double> h, Complex* base, std::size_t stride, std::size_t len,
              ComplexVector& scratch) {
  const std::size_t half = len / 2;
  const std::size_t taps = h.size();
  scratch.assign(len, Complex{});
  for (std::size_t k = 0; k < half; ++k) {
    Complex a{}, d{};
    for (std::size_t j = 0; j < taps; ++j) {
      const Complex v = base[((2 * k + j) % len) * stride];
      const double g = (j % 2 == 0 ? 1.0 : -1.0) * h[taps - 1 - j];
      a += h[j] * v;
      d += g * v;
    }
    scratch[k] = a;
    scratch[half + k] = d;
  }
  for (std::size_t i = 0; i < len; ++i) {
    base[i * stride] = scratch[i];
  }
}

// Transpose of dwt_step.
void idwt_step(std::span<const double> h, Complex* base, std::size_t stride, std::size_t len,
               ComplexVector& scratch) {
  const std::size_t half = len / 2;
  const std::size_t taps = h.size();
  scratch.assign(len, Complex{});
  for (std::size_t k = 0; k < half; ++k) {
    const Complex a = base[k * stride];
    const Complex d = base[(half + k) * stride];
    for (std::size_t j = 0; j < taps; ++j) {
      const double g = (j % 2 == 0 ? 1.0 : -1.0) * h[taps - 1 - j];
      scratch[(2 * k + j) % len] += h[j] * a + g * d;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    base[i * stride] = scratch[i];
  }
}

void wavelet_plane(std::span<const double> h, std::span<Complex> plane, const Shape& shape,
                   std::size_t levels, bool inverse) {
  ComplexVector scratch;
  const std::size_t rows = shape.grid ? shape.rows : 1;
  const std::size_t cols = shape.cols;
  auto level_step = [&](std::size_t level) {
    const std::size_t c_len = cols >> level;
    if (!shape.grid) {
      inverse ? idwt_step(h, plane.data(), 1, c_len, scratch) : dwt_step(h, plane.data(), 1, c_len, scratch);
      return;
    }
    const std::size_t r_len = rows >> level;
    if (!inverse) {
      for (std::size_t r = 0; r < r_len; ++r) {
        dwt_step(h, plane.data() + r * cols, 1, c_len, scratch);
      }
      for (std::size_t c = 0; c < c_len; ++c) {
        dwt_step(h, plane.data() + c, cols, r_len, scratch);
      }
    } else {
      for (std::size_t c = 0; c < c_len; ++c) {
        idwt_step(h, plane.data() + c, cols, r_len, scratch);
      }
      for (std::size_t r = 0; r < r_len; ++r) {
        idwt_step(h, plane.data() + r * cols, 1, c_len, scratch);
      }
    }
  };
  if (!inverse) {
    for (std::size_t level = 0; level < levels; ++level) {
      level_step(level);
    }
  } else {
    for (std::size_t level = levels; level-- > 0;) {
      level_step(level);
    }
  }
}

void transform(const Frame& frame, std::span<Complex> data, const Shape& shape, bool inverse) {
  if (data.size() != shape.size()) {
    throw ShapeError("frame: data length " + std::to_string(data.size()) + " does not match shape size " +
                     std::to_string(shape.size()));
  }
  frame.check_compatible(shape);
  switch (frame.kind()) {
  case FrameKind::identity:
    return;
  case FrameKind::dft:
    inverse ? fft::inverse(data, shape) : fft::forward(data, shape);
    return;
  case FrameKind::haar:
  case FrameKind::db4: {
    const auto h = lowpass(frame.kind());
    const std::size_t plane = shape.plane_size();
    for (std::size_t c = 0; c < shape.channels; ++c) {
      wavelet_plane(h, data.subspan(c * plane, plane), shape, frame.levels(), inverse);
    }
    return;
  }
  }
}

} // namespace

Frame::Frame(FrameKind kind, std::size_t levels) : kind_(kind), levels_(levels) {
  if (!is_wavelet()) {
    levels_ = 0;
  }
}

void Frame::check_compatible(const Shape& shape) const {
  if (shape.size() == 0) {
    throw ShapeError("frame: empty shape");
  }
  if (!is_wavelet()) {
    return;
  }
  auto check_axis = [&](std::size_t len, const char* axis) {
    if (!is_power_of_two(len)) {
      throw ShapeError(std::string("frame: ") + to_string(kind_) + " needs a power-of-two " + axis +
                       " length, got " + std::to_string(len));
    }
    if (levels_ >= 64 || (len >> levels_) == 0) {
      throw ShapeError(std::string("frame: ") + std::to_string(levels_) + " levels exceed the " + axis +
                       " length " + std::to_string(len));
    }
  };
  check_axis(shape.cols, "column");
  if (shape.grid) {
    check_axis(shape.rows, "row");
  }
}

std::string to_string(FrameKind kind) {
  switch (kind) {
  case FrameKind::identity:
    return "identity";
  case FrameKind::haar:
    return "haar";
  case FrameKind::db4:
    return "db4";
  case FrameKind::dft:
    return "dft";
  }
  return "unknown";
}

FrameKind parse_frame_kind(std::string_view name) {
  if (name == "identity") {
    return FrameKind::identity;
  }
  if (name == "haar" || name == "haar-dwt") {
    return FrameKind::haar;
  }
  if (name == "db4" || name == "db4-dwt") {
    return FrameKind::db4;
  }
  if (name == "dft" || name == "unitary-dft" || name == "fourier") {
    return FrameKind::dft;
  }
  throw ParameterError("unknown frame kind '" + std::string(name) + "'");
}

ComplexVector analyze(const Frame& frame, const SignalVector& x) {
  ComplexVector out(x.values());
  analyze_inplace(frame, out, x.shape());
  return out;
}

SignalVector synthesize(const Frame& frame, std::span<const Complex> coeffs, const Shape& shape) {
  ComplexVector out(coeffs.begin(), coeffs.end());
  synthesize_inplace(frame, out, shape);
  return {shape, std::move(out)};
}

void analyze_inplace(const Frame& frame, std::span<Complex> data, const Shape& shape) {
  transform(frame, data, shape, false);
}

void synthesize_inplace(const Frame& frame, std::span<Complex> data, const Shape& shape) {
  transform(frame, data, shape, true);
}

double sparsity_norm(const Frame& frame, const SignalVector& x) { return norm1(analyze(frame, x)); }

Complex soft_threshold(Complex u, double lambda) {
  if (!(lambda >= 0.0)) {
    throw ParameterError("soft_threshold: lambda must be nonnegative");
  }
  if (lambda == 0.0) {
    return u;
  }
  const double mag = std::abs(u);
  if (mag <= lambda) {
    return {0.0, 0.0};
  }
  return u * ((mag - lambda) / mag);
}

ComplexVector soft_threshold(std::span<const Complex> u, double lambda) {
  ComplexVector out(u.begin(), u.end());
  soft_threshold_inplace(out, lambda);
  return out;
}

void soft_threshold_inplace(std::span<Complex> u, double lambda) {
  if (!(lambda >= 0.0)) {
    throw ParameterError("soft_threshold: lambda must be nonnegative");
  }
  if (lambda == 0.0) {
    return;
  }
  for (auto& v : u) {
    const double mag = std::abs(v);
    v = mag <= lambda ? Complex{0.0, 0.0} : v * ((mag - lambda) / mag);
  }
}

CsSpace::CsSpace(Frame f, double t, double l) : frame(f), solution_bound(t), cs_bound(l) {
  if (!(solution_bound > 0.0) || !(cs_bound > 0.0)) {
    throw ParameterError("cs space: solution bound T and constant L must be positive");
  }
}

CsSpace CsSpace::k_sparse(Frame frame, double solution_bound, std::size_t sparsity) {
  if (sparsity == 0) {
    throw ParameterError("cs space: sparsity K must be at least 1");
  }
  return {frame, solution_bound, std::sqrt(static_cast<double>(sparsity))};
}

} // namespace rwkit
