#include "test_util.hpp"

#include "conformal/embedded.hpp"

#include <cmath>

using namespace conformal;

namespace {

double dist(const Sym2& a, const Sym2& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

Sym2 scaled(const Sym2& s, double f) { return {f * s.xx, f * s.xy, f * s.yy}; }

}  // namespace

TEST_CASE("fundamental forms of model surfaces") {
  const EmbeddedPatch sphere = EmbeddedPatch::parse({"cos(u)*cos(v)", "sin(u)*cos(v)", "sin(v)"});
  for (double u : {0.1, 1.2}) {
    for (double v : {-0.7, 0.3}) {
      auto [g, h] = sphere.fundamental_forms(Vec2(u, v));
      CHECK(std::min(dist(h, g), dist(h, scaled(g, -1.0))) < 1e-12);
    }
  }
  const EmbeddedPatch cylinder = EmbeddedPatch::parse({"cos(u)", "sin(u)", "v"});
  auto [gc, hc] = cylinder.fundamental_forms(Vec2(0.4, 0.2));
  CHECK(dist(gc, {1, 0, 1}) < 1e-14);
  CHECK(std::abs(std::abs(hc.xx) - 1.0) < 1e-14);
  CHECK(std::abs(hc.xy) < 1e-14);
  CHECK(std::abs(hc.yy) < 1e-14);

  const EmbeddedPatch paraboloid = EmbeddedPatch::parse({"u", "v", "(u^2 + v^2)/2"});
  auto [gp, hp] = paraboloid.fundamental_forms(Vec2::Zero());
  CHECK(dist(gp, {1, 0, 1}) < 1e-15);
  CHECK(dist(hp, {1, 0, 1}) < 1e-15);

  CHECK_ERROR_KIND(EmbeddedPatch::parse({"u", "u", "0"}).fundamental_forms(Vec2(0.1, 0.1)), ErrorKind::degenerate_metric);
}

TEST_CASE("forms under rigid motions and scaling") {
  const std::array<std::string, 3> rho{"u", "v", "0.3*u^2 - 0.5*u*v + 0.2*v^3"};
  const EmbeddedPatch base = EmbeddedPatch::parse(rho);
  // a cyclic relabelling of the axes is a rotation
  const EmbeddedPatch moved = EmbeddedPatch::parse({rho[2] + " + 1", rho[0] + " - 2", rho[1]});
  const EmbeddedPatch big = EmbeddedPatch::parse({"3*u", "3*v", "3*(" + rho[2] + ")"});
  for (double u : {-0.3, 0.4}) {
    for (double v : {-0.2, 0.5}) {
      auto [g, h] = base.fundamental_forms(Vec2(u, v));
      auto [g2, h2] = moved.fundamental_forms(Vec2(u, v));
      CHECK(dist(g, g2) < 1e-12);
      CHECK(dist(h, h2) < 1e-12);
      auto [g3, h3] = big.fundamental_forms(Vec2(u, v));
      CHECK(dist(g3, scaled(g, 9.0)) < 1e-12);
      CHECK(dist(h3, scaled(h, 3.0)) < 1e-12);
    }
  }
}

TEST_CASE("ellipsoid atlas overlaps agree") {
  int pole = -1;
  const EmbeddedAtlas atlas = ellipsoid_atlas(Vec3(1.0, 1.2, 1.5), &pole);
  CHECK(pole == 2);
  const TensorField g = atlas.first_form(), h = atlas.second_form();
  for (double t : {0.0, 1.0, 2.2, 3.9, 5.5}) {
    const Vec2 p0(std::cos(t), std::sin(t));
    const Vec2 p1 = atlas.surface.transition(0, 1, p0);
    CHECK((atlas_point(atlas, 0, p0) - atlas_point(atlas, 1, p1)).norm() < 1e-12);
    const Mat2 J = atlas.surface.transition_jacobian(0, 1, p0);
    const Mat2 g0 = J.transpose() * g.at(1, p1).matrix() * J;
    const Mat2 h0 = J.transpose() * h.at(1, p1).matrix() * J;
    CHECK((g0 - g.at(0, p0).matrix()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((h0 - h.at(0, p0).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  }
  int revolution_pole = -1;
  ellipsoid_atlas(Vec3(1.5, 1.0, 1.0), &revolution_pole);
  CHECK(revolution_pole == 0);
}

TEST_CASE("umbilics of ellipsoids") {
  const UmbilicReport rev = umbilics(Vec3(1.0, 1.0, 1.5));
  REQUIRE(rev.report.points.size() == 2);
  for (const auto& p : rev.report.points) {
    CHECK(p.index == 2);
    CHECK(p.position.norm() < 1e-6);
  }
  CHECK(rev.report.lhs == 4);
  CHECK(rev.report.pass);

  const UmbilicReport tri = umbilics(Vec3(1.0, 1.2, 1.5));
  REQUIRE(tri.report.points.size() == 4);
  for (const auto& p : tri.report.points) CHECK(p.index == 1);
  CHECK(tri.report.lhs == 4);
  CHECK(tri.report.rhs == 4);

  for (const Vec3& axes : {Vec3(2.0, 1.0, 1.4), Vec3(0.8, 1.3, 1.0)}) CHECK(umbilics(axes).report.lhs == 4);

  CHECK_ERROR_KIND(umbilics(Vec3(1.0, 1.0, 1.0)), ErrorKind::degenerate_umbilic_locus);
}

TEST_CASE("flipping the normal keeps the umbilics") {
  const EmbeddedAtlas atlas = ellipsoid_atlas(Vec3(1.0, 1.2, 1.5));
  const TensorField h = atlas.second_form();
  const TensorField flipped(TensorRole::general, [h](int c, const Vec2& p) { return scaled(h.at(c, p), -1.0); });
  const auto a = conformal_points(atlas.first_form(), h, atlas.surface);
  const auto b = conformal_points(atlas.first_form(), flipped, atlas.surface);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK((a[k].position - b[k].position).norm() < 1e-9);
    CHECK(a[k].index == b[k].index);
  }
}
