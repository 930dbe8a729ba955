#pragma once

#include "conformal/expr.hpp"
#include "conformal/linalg.hpp"
#include "conformal/surface.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace conformal {

enum class TensorRole { metric, general };

/// Minimum eigenvalue below which a metric counts as degenerate.
inline constexpr double kMetricFloor = 1e-12;
/// Tolerance for the trace-free / g-symmetric checks on E^a elements.
inline constexpr double kEndoTolerance = 1e-10;

/**
 * Symmetric bilinear two-tensor field given chart by chart.
 *
 * Only three entries are stored per point. Fields with the metric role are
 * checked for positive definiteness at every evaluation.
 */
class TensorField {
 public:
  using Sampler = std::function<Sym2(int chart, const Vec2& p)>;

  TensorField(TensorRole role, Sampler sampler);

  static TensorField euclidean();
  /// One (xx, xy, yy) expression triple per chart. A single triple is shared by all charts.
  static TensorField from_expressions(TensorRole role,
                                      std::vector<std::array<expr::Expression, 3>> per_chart);

  Sym2 at(int chart, const Vec2& p) const;
  TensorRole role() const { return role_; }

 private:
  TensorRole role_;
  Sampler sampler_;
};

/// Section of the trace-free g-symmetric endomorphisms, as the complex number
/// a + ib standing for ((a, b), (b, -a)) in the positive g-orthonormal frame.
class EASection {
 public:
  using Sampler = std::function<cplx(int chart, const Vec2& p)>;

  EASection() = default;
  explicit EASection(Sampler sampler) : sampler_(std::move(sampler)) {}

  cplx operator()(int chart, const Vec2& p) const { return sampler_(chart, p); }
  explicit operator bool() const { return static_cast<bool>(sampler_); }

 private:
  Sampler sampler_;
};

enum class FrameStart {
  /// orthonormalise d/du first
  first,
  /// orthonormalise d/dv first
  second,
};

/// H = G^-1 A, the endomorphism with g(u, Hv) = h(u, v).
Mat2 endo_of_tensor(const Sym2& g, const Sym2& h);

/// H - (tr H / 2) I.
Mat2 trace_free(const Mat2& H);

/// Gram-Schmidt on the coordinate frame. Columns are e1, e2 in coordinates;
/// g(ei, ej) = delta_ij and det > 0.
Mat2 orthonormal_frame(const Sym2& g, FrameStart start = FrameStart::first);

/// Components (a, b) of a trace-free g-symmetric endomorphism in `frame`.
cplx ea_components(const Mat2& Ha, const Mat2& frame);

/// Inverse of ea_components: the coordinate matrix of ((a, b), (b, -a)) in `frame`.
Mat2 ea_matrix(cplx s, const Mat2& frame);

/// Rotation by +90 degrees for g and the orientation, in coordinates.
Mat2 complex_structure(const Sym2& g);

/// (commuting part, anticommuting part) of M with respect to J.
std::pair<Mat2, Mat2> endo_split(const Mat2& M, const Mat2& J);

/// dF^T G(F(p)) dF given the Jacobian and the metric at the image point.
Sym2 pullback_metric(const Mat2& dF, const Sym2& g_at_image);

/// A chart-to-chart smooth map with its Jacobian.
struct ChartMap {
  std::function<Vec2(int chart, const Vec2& p)> map;
  std::function<Mat2(int chart, const Vec2& p)> jacobian;
};

/// (F^* g) at p. Throws outside_domain when F(p) leaves the surface.
Sym2 pullback_metric(const ChartMap& F, const TensorField& g, const Surface& surface, int chart,
                     const Vec2& p);

/// Pull-back F^* g as a general tensor field.
TensorField pullback_field(ChartMap F, TensorField g, Surface surface);

/// The section H^a of (g, h) through endo_of_tensor, trace_free and ea_components.
EASection trace_free_section(TensorField g, TensorField h, FrameStart start = FrameStart::first);

/// Inverse construction: h with h(u, v) = g(u, S v) where S is the E^a element of `s`.
TensorField tensor_from_section(TensorField g, EASection s);

/// Largest disagreement of a field across periodic identifications or chart
/// overlaps, sampled on an n-by-n grid. Zero for single non-periodic charts.
double identification_defect(const TensorField& field, const Surface& surface, std::size_t n = 16);

}  // namespace conformal
