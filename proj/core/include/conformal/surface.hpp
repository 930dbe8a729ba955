#pragma once

#include "conformal/linalg.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace conformal {

enum class SurfaceKind { disc, annulus, torus, sphere_atlas, embedded_genus0 };

std::string_view to_string(SurfaceKind kind);

struct Box {
  Vec2 lo;
  Vec2 hi;

  Vec2 size() const { return hi - lo; }
  bool contains(const Vec2& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
};

struct Chart {
  int id = 0;
  std::array<std::string, 2> coordinates{"u", "v"};
  /// Rectangle scanned for zeros. On the torus this bounds the fundamental
  /// parallelogram; the scan itself runs in lattice coordinates.
  Box bounds;
  bool periodic = false;
};

/**
 * A boundary circle traversed in the induced orientation, so that the
 * outward normal followed by the positive tangent is a positive frame.
 * All catalog boundaries are coordinate circles.
 */
struct BoundaryComponent {
  int chart = 0;
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
  /// +1 counter-clockwise in chart coordinates (outer circles), -1 clockwise.
  int orientation = 1;

  Vec2 position(double theta) const;
  Vec2 velocity(double theta) const;
  /// Parameter of the point on the circle closest to `q`.
  double parameter_of(const Vec2& q) const;
};

/// A compact oriented surface from the fixed catalog.
class Surface {
 public:
  static Surface disc(double radius = 1.0);
  static Surface annulus(double inner, double outer);
  /// C / (Z + tau Z) with Im tau > 0, one periodic chart in Cartesian coordinates.
  static Surface torus(cplx tau);
  /// Two stereographic charts w and w' = 1/w; chart 0 owns |w| <= 1.
  static Surface sphere_atlas(double extent = 1.6);
  /// Same charts as the sphere atlas, used for embedded genus-0 patches.
  static Surface embedded_genus0(double extent = 1.6);

  SurfaceKind kind() const { return kind_; }
  int euler_characteristic() const;
  const std::vector<Chart>& charts() const { return charts_; }
  const std::vector<BoundaryComponent>& boundary() const { return boundary_; }
  bool has_boundary() const { return !boundary_.empty(); }
  cplx tau() const { return tau_; }

  /// Closed surface region covered by the chart (Sigma including its boundary).
  bool in_domain(int chart, const Vec2& p) const;
  /// Ownership partition used when counting zeros found in overlapping charts.
  bool owns(int chart, const Vec2& p) const;
  /// Coordinate distance to the surface boundary; +inf for closed surfaces.
  double boundary_distance(int chart, const Vec2& p) const;
  /// Coordinate distance to where the chart stops being usable (sphere charts); +inf otherwise.
  double chart_edge_distance(int chart, const Vec2& p) const;
  /// Torus: representative in the fundamental parallelogram. Identity otherwise.
  Vec2 reduce(int chart, const Vec2& p) const;
  /// Coordinate distance, minimised over lattice translates on the torus.
  double distance(int chart, const Vec2& a, const Vec2& b) const;

  /// Node (i, j) of an n-by-n scan grid. Rectangular charts include both edges;
  /// the torus grid is the lattice grid s*1 + t*tau with s, t in [0, 1).
  Vec2 grid_point(int chart, std::size_t i, std::size_t j, std::size_t n) const;
  /// Typical coordinate length of a chart, used for default radii.
  double chart_scale(int chart) const;

  /// Sphere atlas overlap map w -> 1/w and its Jacobian.
  Vec2 transition(int from, int to, const Vec2& p) const;
  Mat2 transition_jacobian(int from, int to, const Vec2& p) const;

 private:
  SurfaceKind kind_ = SurfaceKind::disc;
  std::vector<Chart> charts_;
  std::vector<BoundaryComponent> boundary_;
  cplx tau_{0.0, 1.0};
  double inner_ = 0.0;
  double outer_ = 1.0;
  double extent_ = 1.6;
};

}  // namespace conformal
