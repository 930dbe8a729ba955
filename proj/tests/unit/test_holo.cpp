#include "test_util.hpp"

#include "conformal/holo.hpp"

#include <cmath>
#include <numbers>

using namespace conformal;
using conformal::testing::tensor;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec2> sample_points() {
  std::vector<Vec2> pts;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) pts.emplace_back(0.15 * i, 0.15 * j);
  }
  return pts;
}

}  // namespace

TEST_CASE("dbar examples") {
  const VectorField z = VectorField::parse({"u", "v"});
  const VectorField zbar = VectorField::parse({"u", "-v"});
  for (const Vec2& p : sample_points()) {
    CHECK(std::abs(z.dbar(0, p)) < 1e-15);
    CHECK(std::abs(zbar.dbar(0, p) - 1.0) < 1e-15);
  }
  const cplx tau(0.3, 1.1);
  const VectorField f = VectorField::parse(torus_example_field(tau));
  const Surface torus = Surface::torus(tau);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      const Vec2 p = torus.grid_point(0, i, j, 16);
      CHECK(std::abs(f.dbar(0, p) + (kPi / tau.imag()) * f.value(0, p)) < 1e-8);
    }
  }
}

TEST_CASE("dbar is complex linear and kills holomorphic fields") {
  const VectorField a = VectorField::parse({"u^2 + v", "u*v - u"});
  const VectorField b = VectorField::parse({"sin(u)", "v^3"});
  // (2 - i) a + i b
  const VectorField mix = VectorField::parse({"2*(u^2 + v) + (u*v - u) - v^3", "2*(u*v - u) - (u^2 + v) + sin(u)"});
  for (const Vec2& p : sample_points()) {
    const cplx expected = cplx(2, -1) * a.dbar(0, p) + cplx(0, 1) * b.dbar(0, p);
    CHECK(std::abs(mix.dbar(0, p) - expected) < 1e-12);
  }
  for (const auto& holo : {std::array<std::string, 2>{"1.5", "-2"}, {"u", "v"}, {"u^2 - v^2", "2*u*v"}}) {
    const VectorField h = VectorField::parse(holo);
    for (const Vec2& p : sample_points()) CHECK(std::abs(h.dbar(0, p)) < 1e-12);
  }
}

TEST_CASE("dbar of a holomorphic multiple") {
  // phi = z^2 + 1, f = u^2 + i u v
  const std::string A = "(u^2 - v^2 + 1)", B = "(2*u*v)", P = "(u^2)", Q = "(u*v)";
  const VectorField f = VectorField::parse({"u^2", "u*v"});
  const VectorField phif = VectorField::parse({P + "*" + A + " - " + Q + "*" + B, P + "*" + B + " + " + Q + "*" + A});
  for (const Vec2& p : sample_points()) {
    const cplx z = to_complex(p);
    CHECK(std::abs(phif.dbar(0, p) - (z * z + 1.0) * f.dbar(0, p)) < 1e-10);
  }
}

TEST_CASE("torus example is doubly periodic") {
  const cplx tau(0.3, 1.1);
  const VectorField f = VectorField::parse(torus_example_field(tau));
  for (const Vec2& p : sample_points()) {
    const cplx d = f.dbar(0, p);
    CHECK(std::abs(f.dbar(0, p + Vec2(1.0, 0.0)) - d) < 1e-12);
    CHECK(std::abs(f.dbar(0, p + Vec2(tau.real(), tau.imag())) - d) < 1e-12);
  }
}

TEST_CASE("conformal points of vector fields") {
  const cplx tau(0.3, 1.1);
  CHECK(conformal_points_vf(VectorField::parse(torus_example_field(tau)), Surface::torus(tau)).empty());
  const auto pts = conformal_points_vf(VectorField::parse({"u^2 - v^2", "-2*u*v"}), Surface::disc());
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].position.norm() < 1e-9);
  CHECK(pts[0].index == -1);
  CHECK_ERROR_KIND(conformal_points_vf(VectorField::parse({"u^3 - 3*u*v^2", "3*u^2*v - v^3"}), Surface::disc()),
                   ErrorKind::non_isolated_zero);
}

TEST_CASE("vector-field corollary") {
  const VerificationReport a = verify_cor_vf(VectorField::parse({"u", "-v"}), Surface::disc());
  CHECK(a.points.empty());
  CHECK(a.windings == std::vector<int>{-2});
  CHECK(a.lhs == 0);
  CHECK(a.rhs == 0);
  CHECK(a.pass);

  const VerificationReport b = verify_cor_vf(VectorField::parse({"u^2 - v^2", "-2*u*v"}), Surface::disc());
  CHECK(b.lhs == -1);
  CHECK(b.windings == std::vector<int>{-3});
  CHECK(b.pass);

  const cplx tau(0.3, 1.1);
  const VerificationReport c = verify_cor_vf(VectorField::parse(torus_example_field(tau)), Surface::torus(tau));
  CHECK(c.lhs == 0);
  CHECK(c.rhs == 0);
  CHECK(c.pass);

  const VerificationReport d =
      verify_cor_vf(VectorField::parse({"u + 0.3*(u^2 + v^2)", "-v + 0.2*u*v"}), Surface::annulus(0.4, 1.0));
  CHECK(d.pass);
}

TEST_CASE("isothermal charts") {
  const Surface disc = Surface::disc();
  CHECK_NOTHROW(require_isothermal(TensorField::euclidean(), disc));
  CHECK_NOTHROW(require_isothermal(tensor("exp(u)", "0", "exp(u)", TensorRole::metric), disc));
  CHECK_ERROR_KIND(require_isothermal(tensor("2", "0", "1", TensorRole::metric), disc), ErrorKind::chart_not_isothermal);
}

TEST_CASE("flow integration") {
  const Surface disc = Surface::disc();
  // f = i z rotates rigidly
  const VectorField rot = VectorField::parse({"-v", "u"});
  const FlowResult r = integrate_flow(rot, disc, 0, Vec2(0.5, 0.0), 1.0);
  CHECK((r.point - Vec2(0.5 * std::cos(1.0), 0.5 * std::sin(1.0))).norm() < 1e-10);
  CHECK(std::abs(r.jacobian.determinant() - 1.0) < 1e-10);
  CHECK_ERROR_KIND(integrate_flow(VectorField::parse({"1", "0"}), disc, 0, Vec2(0.5, 0.0), 1.0),
                   ErrorKind::flow_left_chart);
}

TEST_CASE("linearization") {
  const double kappa = calibrate_kappa();
  CHECK(kappa == doctest::Approx(2.0).epsilon(1e-6));
  const std::vector<double> schedule{1e-2, 5e-3, 2.5e-3};
  const Surface disc = Surface::disc();

  const LinearizationRecord zbar =
      linearization_check(VectorField::parse({"u", "-v"}), disc, 0, sample_points(), schedule, kappa);
  REQUIRE(zbar.samples.size() == 3);
  for (const auto& s : zbar.samples) CHECK(s.residual < 1e-3);

  const LinearizationRecord mixed = linearization_check(VectorField::parse({"u^2 - v^2 + 0.3*v", "u*v"}), disc, 0,
                                                        sample_points(), schedule, kappa);
  REQUIRE(mixed.ratios.size() == 2);
  for (double r : mixed.ratios) CHECK(r == doctest::Approx(0.5).epsilon(0.05));

  const LinearizationRecord holo = linearization_check(VectorField::parse({"u^2 - v^2", "2*u*v"}), disc, 0,
                                                       sample_points(), schedule, kappa);
  for (const auto& s : holo.samples) CHECK(s.residual < 1e-8);
}
