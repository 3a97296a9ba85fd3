#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "rwkit/signal.hpp"

namespace rwkit {

enum class FrameKind { identity, haar, db4, dft };

/// Square, invertible sparsifying transform. All built-in kinds are
/// orthonormal, so synthesis is both the inverse and the adjoint of analysis.
///
/// Wavelet kinds use periodic boundary extension and the coefficient layout
/// [approx_L | detail_L | ... | detail_1] along each axis. Grids are
/// transformed separably, rows then columns, on the shrinking approximation
/// block at every level. The DFT kind is the unitary transform (1/sqrt(n)).
class Frame {
public:
  Frame() = default;
  Frame(FrameKind kind, std::size_t levels);

  static Frame identity() { return {FrameKind::identity, 0}; }
  static Frame haar(std::size_t levels) { return {FrameKind::haar, levels}; }
  static Frame db4(std::size_t levels) { return {FrameKind::db4, levels}; }
  static Frame dft() { return {FrameKind::dft, 0}; }

  FrameKind kind() const noexcept { return kind_; }
  std::size_t levels() const noexcept { return levels_; }
  bool is_wavelet() const noexcept { return kind_ == FrameKind::haar || kind_ == FrameKind::db4; }
  bool orthonormal() const noexcept { return true; }

  /// Throws ShapeError unless the frame can transform signals of `shape`.
  void check_compatible(const Shape& shape) const;

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  FrameKind kind_{FrameKind::identity};
  std::size_t levels_{0};
};

std::string to_string(FrameKind kind);
/// Accepts identity, haar, haar-dwt, db4, db4-dwt, dft, unitary-dft, fourier.
FrameKind parse_frame_kind(std::string_view name);

ComplexVector analyze(const Frame& frame, const SignalVector& x);
SignalVector synthesize(const Frame& frame, std::span<const Complex> coeffs, const Shape& shape);

/// In-place variants used by the iterative solvers; `data` is laid out per `shape`.
void analyze_inplace(const Frame& frame, std::span<Complex> data, const Shape& shape);
void synthesize_inplace(const Frame& frame, std::span<Complex> data, const Shape& shape);

/// ||x||_# = ||analyze(x)||_1 with complex moduli.
double sparsity_norm(const Frame& frame, const SignalVector& x);

/// S_lambda(u): 0 where |u| <= lambda, u (|u| - lambda) / |u| otherwise.
Complex soft_threshold(Complex u, double lambda);
ComplexVector soft_threshold(std::span<const Complex> u, double lambda);
void soft_threshold_inplace(std::span<Complex> u, double lambda);

/// Frame, budget T on the sparsity norm, and decomposition constant L.
struct CsSpace {
  Frame frame;
  double solution_bound{1.0};
  double cs_bound{1.0};

  CsSpace(Frame frame, double solution_bound, double cs_bound);

  /// K-sparse vectors have CS-space constant L = sqrt(K).
  static CsSpace k_sparse(Frame frame, double solution_bound, std::size_t sparsity);

  bool contains(const SignalVector& x) const { return sparsity_norm(frame, x) <= solution_bound; }
};

} // namespace rwkit
