#pragma once

#include "conformal/geometry.hpp"
#include "conformal/linalg.hpp"
#include "conformal/surface.hpp"

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace conformal {

struct WindingOptions {
  /// Samples smaller than this (in modulus) violate the nonvanishing hypothesis.
  double activation = 1e-9;
  std::size_t initial_samples = 256;
  /// Bisection depth per initial interval before giving up.
  int max_depth = 12;
  /// Largest accepted angle increment between consecutive samples.
  double max_step = std::numbers::pi / 2.0;
};

/// Closed curve in C parametrised over theta in [0, 2 pi].
using LoopCurve = std::function<cplx(double theta)>;

/// Closed loop in one chart, theta in [0, 2 pi].
struct Loop {
  int chart = 0;
  std::function<Vec2(double theta)> at;

  static Loop circle(int chart, const Vec2& center, double radius);
  Loop reversed() const;
};

/// Winding number of `curve` around 0 by certified angle accumulation.
/// Throws non_vanishing_violation or refinement_limit.
int winding_number(const LoopCurve& curve, const WindingOptions& options = {});

/// Winding of s / r: frame independent when s and r share a frame.
int relative_winding(const LoopCurve& s, const LoopCurve& r, const WindingOptions& options = {});
int relative_winding(const EASection& s, const EASection& r, const Loop& loop,
                     const WindingOptions& options = {});

/// Located zero of an E^a section.
struct ConformalPoint {
  int chart = 0;
  Vec2 position = Vec2::Zero();
  int index = 0;
  double isolation_radius = 0.0;
  /// |s| at the refined position
  double residual = 0.0;
};

struct ZeroSearchOptions {
  std::size_t grid = 256;
  double zero_tolerance = 1e-9;
  double newton_tolerance = 1e-12;
  int max_iterations = 50;
  double dedupe_radius = 1e-6;
  /// Zeros closer than this to the surface boundary are a hard error.
  double boundary_margin = 1e-4;
  WindingOptions winding;
};

struct ZeroSearchStats {
  std::size_t candidates = 0;
  std::size_t converged = 0;
  std::size_t winding_cells = 0;
};

/// Grid scan, Newton refinement, deduplication and isolation radius for every
/// zero of `s` over all charts. Indices are left at 0; see index_of_zero.
std::vector<ConformalPoint> find_zeros(const EASection& s, const Surface& surface,
                                       const ZeroSearchOptions& options = {},
                                       ZeroSearchStats* stats = nullptr);

/// Winding of s against the frame-constant section 1 on the isolation circle.
int index_of_zero(const EASection& s, const ConformalPoint& zero, const WindingOptions& options = {});
int index_on_circle(const EASection& s, int chart, const Vec2& center, double radius,
                    const WindingOptions& options = {});

int algebraic_count(std::span<const ConformalPoint> points);

/// Outward normal and positive unit tangent (g-orthonormal, positive frame).
struct BoundaryFrame {
  Vec2 normal;
  Vec2 tangent;

  Mat2 matrix() const {
    Mat2 m;
    m.col(0) = normal;
    m.col(1) = tangent;
    return m;
  }
};

BoundaryFrame boundary_frame(const Sym2& g, const Vec2& velocity);
BoundaryFrame boundary_frame(const Surface& surface, const TensorField& g, std::size_t component,
                             double theta);

/// Coordinate matrix of the reflection fixing the boundary tangent line.
Mat2 boundary_reflection_matrix(const Surface& surface, const TensorField& g, std::size_t component,
                                double theta);
/// The same reflection as an E^a element in the Gram-Schmidt frame of g.
cplx boundary_reflection_section(const Surface& surface, const TensorField& g,
                                 std::size_t component, double theta);

/// Relative winding of s against the boundary reflection along component i.
int boundary_winding(const EASection& s, const TensorField& g, const Surface& surface,
                     std::size_t component, const WindingOptions& options = {});

}  // namespace conformal
