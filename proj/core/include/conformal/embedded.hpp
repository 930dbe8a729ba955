#pragma once

#include "conformal/expr.hpp"
#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"
#include "conformal/theorem.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace conformal {

/// Parametrised patch rho(u, v) in R^3 with symbolic first and second derivatives.
class EmbeddedPatch {
 public:
  explicit EmbeddedPatch(std::array<expr::Expression, 3> rho);
  static EmbeddedPatch parse(const std::array<std::string, 3>& components);

  Vec3 position(const Vec2& p) const;
  /// (rho_u, rho_v)
  std::pair<Vec3, Vec3> tangents(const Vec2& p) const;

  /// (first form, second form) with normal rho_u x rho_v / |rho_u x rho_v|.
  /// Throws degenerate_metric where rho is not an immersion.
  std::pair<Sym2, Sym2> fundamental_forms(const Vec2& p) const;

 private:
  std::array<expr::Expression, 3> rho_;
  std::array<expr::Expression, 3> du_;
  std::array<expr::Expression, 3> dv_;
  std::array<expr::Expression, 3> duu_;
  std::array<expr::Expression, 3> duv_;
  std::array<expr::Expression, 3> dvv_;
};

/// Patches over the charts of Surface::embedded_genus0.
struct EmbeddedAtlas {
  Surface surface;
  std::vector<EmbeddedPatch> patches;

  TensorField first_form() const;
  TensorField second_form() const;
};

/// Two stereographic patches about the poles of the pole axis.
/// The pole axis is the distinct axis of an ellipsoid of revolution and the
/// longest axis otherwise; it is reported as 0, 1 or 2.
EmbeddedAtlas ellipsoid_atlas(const Vec3& semi_axes, int* pole_axis = nullptr);

struct UmbilicReport {
  VerificationReport report;
  int pole_axis = 2;
};

/// Umbilics of the ellipsoid as conformal points of (first form, second form).
/// Throws degenerate_umbilic_locus for the round sphere.
UmbilicReport umbilics(const Vec3& semi_axes, const ZeroSearchOptions& options = {});

/// Embedded-surface point of chart coordinates, for reporting.
Vec3 atlas_point(const EmbeddedAtlas& atlas, int chart, const Vec2& p);

}  // namespace conformal
