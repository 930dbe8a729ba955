#include "conformal/embedded.hpp"

#include "conformal/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace conformal {

namespace {

std::array<expr::Expression, 3> derive_all(const std::array<expr::Expression, 3>& e,
                                           const std::string& var) {
  return {e[0].differentiate(var), e[1].differentiate(var), e[2].differentiate(var)};
}

const std::string& coordinate(const std::array<expr::Expression, 3>& e, std::size_t i) {
  const auto& vars = e[0].variables();
  if (vars.size() != 2) throw Error(ErrorKind::config, "patch components take two coordinates");
  return vars[i];
}

Vec3 eval3(const std::array<expr::Expression, 3>& e, const Vec2& p) {
  const std::array<double, 2> at{p.x(), p.y()};
  return {e[0].eval(at), e[1].eval(at), e[2].eval(at)};
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return x < 0.0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

}  // namespace

EmbeddedPatch::EmbeddedPatch(std::array<expr::Expression, 3> rho)
    : rho_(std::move(rho)),
      du_(derive_all(rho_, coordinate(rho_, 0))),
      dv_(derive_all(rho_, coordinate(rho_, 1))),
      duu_(derive_all(du_, coordinate(rho_, 0))),
      duv_(derive_all(du_, coordinate(rho_, 1))),
      dvv_(derive_all(dv_, coordinate(rho_, 1))) {}

EmbeddedPatch EmbeddedPatch::parse(const std::array<std::string, 3>& components) {
  const std::vector<std::string> vars{"u", "v"};
  return EmbeddedPatch({expr::Expression::parse(components[0], vars),
                        expr::Expression::parse(components[1], vars),
                        expr::Expression::parse(components[2], vars)});
}

Vec3 EmbeddedPatch::position(const Vec2& p) const { return eval3(rho_, p); }

std::pair<Vec3, Vec3> EmbeddedPatch::tangents(const Vec2& p) const {
  return {eval3(du_, p), eval3(dv_, p)};
}

std::pair<Sym2, Sym2> EmbeddedPatch::fundamental_forms(const Vec2& p) const {
  const Vec3 ru = eval3(du_, p);
  const Vec3 rv = eval3(dv_, p);
  const Vec3 cross = ru.cross(rv);
  const double area = cross.norm();
  if (!(area > 1e-12 * (1.0 + ru.squaredNorm() + rv.squaredNorm()))) {
    throw Error(ErrorKind::degenerate_metric, "parametrisation is not an immersion");
  }
  const Vec3 n = cross / area;
  const Sym2 first{ru.dot(ru), ru.dot(rv), rv.dot(rv)};
  const Sym2 second{eval3(duu_, p).dot(n), eval3(duv_, p).dot(n), eval3(dvv_, p).dot(n)};
  return {first, second};
}

TensorField EmbeddedAtlas::first_form() const {
  return TensorField(TensorRole::metric, [patches = patches](int chart, const Vec2& p) {
    return patches.at(static_cast<std::size_t>(chart)).fundamental_forms(p).first;
  });
}

TensorField EmbeddedAtlas::second_form() const {
  return TensorField(TensorRole::general, [patches = patches](int chart, const Vec2& p) {
    return patches.at(static_cast<std::size_t>(chart)).fundamental_forms(p).second;
  });
}

EmbeddedAtlas ellipsoid_atlas(const Vec3& semi_axes, int* pole_axis) {
  if (!(semi_axes.minCoeff() > 0.0)) throw Error(ErrorKind::config, "semi-axes must be positive");
  int pole = 0;
  if (semi_axes(0) == semi_axes(1) && semi_axes(1) != semi_axes(2)) {
    pole = 2;
  } else if (semi_axes(0) == semi_axes(2) && semi_axes(0) != semi_axes(1)) {
    pole = 1;
  } else if (semi_axes(1) == semi_axes(2) && semi_axes(0) != semi_axes(1)) {
    pole = 0;
  } else {
    semi_axes.maxCoeff(&pole);
  }
  if (pole_axis) *pole_axis = pole;
  // cyclic relabelling that puts the pole axis last keeps the orientation
  const int e1 = (pole + 1) % 3;
  const int e2 = (pole + 2) % 3;
  const std::string q = "(1 + u^2 + v^2)";
  const std::array<std::string, 2> planar_north{"2*u/" + q, "2*v/" + q};
  const std::array<std::string, 2> planar_south{"2*u/" + q, "(-2)*v/" + q};
  const std::string height_north = "(1 - u^2 - v^2)/" + q;
  const std::string height_south = "(u^2 + v^2 - 1)/" + q;

  auto patch = [&](const std::array<std::string, 2>& planar, const std::string& height) {
    std::array<std::string, 3> c;
    c[static_cast<std::size_t>(e1)] = num(semi_axes(e1)) + "*" + planar[0];
    c[static_cast<std::size_t>(e2)] = num(semi_axes(e2)) + "*" + planar[1];
    c[static_cast<std::size_t>(pole)] = num(semi_axes(pole)) + "*" + height;
    return EmbeddedPatch::parse(c);
  };
  EmbeddedAtlas atlas{Surface::embedded_genus0(), {}};
  atlas.patches.push_back(patch(planar_north, height_north));
  atlas.patches.push_back(patch(planar_south, height_south));
  return atlas;
}

UmbilicReport umbilics(const Vec3& semi_axes, const ZeroSearchOptions& options) {
  if (semi_axes(0) == semi_axes(1) && semi_axes(1) == semi_axes(2)) {
    throw Error(ErrorKind::degenerate_umbilic_locus, "every point of a round sphere is umbilic");
  }
  UmbilicReport out;
  const EmbeddedAtlas atlas = ellipsoid_atlas(semi_axes, &out.pole_axis);
  try {
    out.report = verify_theorem1(atlas.first_form(), atlas.second_form(), atlas.surface, options);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_isolated_zero) throw;
    throw Error(ErrorKind::degenerate_umbilic_locus, std::string("umbilics are not isolated: ") + e.what());
  }
  return out;
}

Vec3 atlas_point(const EmbeddedAtlas& atlas, int chart, const Vec2& p) {
  return atlas.patches.at(static_cast<std::size_t>(chart)).position(p);
}

}  // namespace conformal
