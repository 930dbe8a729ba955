#include "test_util.hpp"

#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"

#include <cmath>
#include <numbers>

using namespace conformal;
using conformal::testing::tensor;

namespace {

double dist(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

Sym2 random_spd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  Mat2 a = make_mat2(x(rng), x(rng), x(rng), x(rng));
  return Sym2::from_matrix(a.transpose() * a + 0.2 * Mat2::Identity());
}

Sym2 random_sym(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  return {x(rng), x(rng), x(rng)};
}

Mat2 rotation(double t) { return make_mat2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t)); }

}  // namespace

TEST_CASE("surface catalog") {
  CHECK(Surface::disc().euler_characteristic() == 1);
  CHECK(Surface::annulus(0.5, 1.0).euler_characteristic() == 0);
  CHECK(Surface::torus({0.3, 1.1}).euler_characteristic() == 0);
  CHECK(Surface::sphere_atlas().euler_characteristic() == 2);
  CHECK(Surface::embedded_genus0().euler_characteristic() == 2);

  const Surface annulus = Surface::annulus(0.5, 1.0);
  REQUIRE(annulus.boundary().size() == 2);
  CHECK(annulus.boundary()[0].orientation == 1);
  CHECK(annulus.boundary()[1].orientation == -1);
  CHECK(annulus.boundary()[1].radius == 0.5);

  const Surface torus = Surface::torus({0.3, 1.1});
  CHECK(torus.tau() == cplx(0.3, 1.1));
  CHECK(!torus.has_boundary());
  const Vec2 p(0.2, 0.4);
  CHECK((torus.reduce(0, p + Vec2(1.0, 0.0)) - p).norm() < 1e-12);
  CHECK((torus.reduce(0, p + Vec2(0.3, 1.1)) - p).norm() < 1e-12);
}

TEST_CASE("boundary components carry the induced orientation") {
  for (const Surface& s : {Surface::disc(), Surface::annulus(0.4, 1.0)}) {
    for (std::size_t i = 0; i < s.boundary().size(); ++i) {
      const auto& c = s.boundary()[i];
      for (double t : {0.0, 1.0, 2.5, 4.0}) {
        const Vec2 q = c.position(t);
        const Vec2 outward = c.orientation * (q - c.center) / c.radius;
        const Vec2 tangent = c.velocity(t).normalized();
        CHECK(outward.x() * tangent.y() - outward.y() * tangent.x() == doctest::Approx(1.0));
        CHECK(s.boundary_distance(c.chart, q) == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("tensor fields") {
  const TensorField g = tensor("1 + u^2", "u*v", "2", TensorRole::metric);
  const Sym2 s = g.at(0, Vec2(1.0, 0.5));
  CHECK(s.xx == 2.0);
  CHECK(s.xy == 0.5);
  CHECK(s.yy == 2.0);
  CHECK_ERROR_KIND(g.at(0, Vec2(1.0, 2.0)), ErrorKind::degenerate_metric);
  CHECK_ERROR_KIND(tensor("1", "2", "1", TensorRole::metric).at(0, Vec2(0.0, 0.0)), ErrorKind::degenerate_metric);
  CHECK_NOTHROW(tensor("1", "2", "1").at(0, Vec2(0.0, 0.0)));

  const Surface torus = Surface::torus({0.3, 1.1});
  CHECK(identification_defect(tensor("cos(2*pi*u)", "1", "1"), torus) > 0.1);
  const double w = 2 * std::numbers::pi / 1.1;
  const std::string periodic = "cos(" + std::to_string(w) + "*v)";
  CHECK(identification_defect(tensor(periodic, "0", "1"), torus) < 1e-6);
}

TEST_CASE("endo_of_tensor examples") {
  CHECK(dist(endo_of_tensor({1, 0, 1}, {1, 0, 1}), Mat2::Identity()) < 1e-15);
  CHECK(dist(endo_of_tensor({2, 0, 2}, {2, 0, 4}), make_mat2(1, 0, 0, 2)) < 1e-15);
  CHECK(dist(endo_of_tensor({1, 0, 4}, {0, 2, 0}), make_mat2(0, 2, 0.5, 0)) < 1e-15);
}

TEST_CASE("endo_of_tensor represents h against g") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Sym2 g = random_spd(rng), h = random_sym(rng);
    const Mat2 H = endo_of_tensor(g, h);
    for (int j = 0; j < 20; ++j) {
      const Vec2 a(x(rng), x(rng)), b(x(rng), x(rng));
      CHECK(std::abs(a.dot(g.matrix() * H * b) - a.dot(h.matrix() * b)) < 1e-10);
    }
  }
}

TEST_CASE("trace_free examples") {
  CHECK(dist(trace_free(Mat2::Identity()), Mat2::Zero()) == 0.0);
  CHECK(dist(trace_free(make_mat2(2, 1, 1, 0)), make_mat2(1, 1, 1, -1)) == 0.0);
  const Mat2 m = make_mat2(0.3, 2, -1, -0.3);
  CHECK(dist(trace_free(m), m) == 0.0);
}

TEST_CASE("orthonormal frames") {
  CHECK(dist(orthonormal_frame({1, 0, 1}), Mat2::Identity()) < 1e-15);
  CHECK(dist(orthonormal_frame({4, 0, 1}), make_mat2(0.5, 0, 0, 1)) < 1e-15);
  CHECK(orthonormal_frame({1, 0, 9}).col(1).isApprox(Vec2(0, 1.0 / 3)));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const Sym2 g = random_spd(rng);
    for (FrameStart start : {FrameStart::first, FrameStart::second}) {
      const Mat2 E = orthonormal_frame(g, start);
      CHECK(dist(E.transpose() * g.matrix() * E, Mat2::Identity()) < 1e-12);
      CHECK(E.determinant() > 0);
    }
  }
}

TEST_CASE("ea_components examples") {
  CHECK(ea_components(make_mat2(1, 0, 0, -1), Mat2::Identity()) == cplx(1, 0));
  CHECK(ea_components(make_mat2(0, 1, 1, 0), Mat2::Identity()) == cplx(0, 1));
  CHECK(ea_components(Mat2::Zero(), Mat2::Identity()) == cplx(0, 0));
}

TEST_CASE("E^a round trip and anticommutation") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Sym2 g = random_spd(rng);
    const Mat2 Ha = trace_free(endo_of_tensor(g, random_sym(rng)));
    const Mat2 E = orthonormal_frame(g);
    const Mat2 back = ea_matrix(ea_components(Ha, E), E);
    CHECK(dist(back, Ha) < 1e-10);
    CHECK(std::abs(back.trace()) < 1e-10);
    const Mat2 gS = g.matrix() * back;
    CHECK(std::abs(gS(0, 1) - gS(1, 0)) < 1e-10);
    const Mat2 J = complex_structure(g);
    CHECK(dist(back * J + J * back, Mat2::Zero()) < 1e-10);
  }
}

TEST_CASE("complex structure") {
  CHECK(dist(complex_structure({1, 0, 1}), make_mat2(0, -1, 1, 0)) < 1e-15);
  CHECK(dist(complex_structure({4, 0, 1}), make_mat2(0, -0.5, 2, 0)) < 1e-15);
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    const Mat2 J = complex_structure(random_spd(rng));
    CHECK(dist(J * J, -Mat2::Identity()) < 1e-12);
  }
}

TEST_CASE("complex structure is natural under isometries") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Sym2 g = random_spd(rng);
    const Mat2 A = make_mat2(1.0, 0.4, -0.2, 1.3);
    // g' = A^-T g A^-1 makes A an isometry from (R^2, g) to (R^2, g')
    const Mat2 Ainv = A.inverse();
    const Sym2 g2 = Sym2::from_matrix(Ainv.transpose() * g.matrix() * Ainv);
    CHECK(dist(A * complex_structure(g), complex_structure(g2) * A) < 1e-8);
  }
}

TEST_CASE("endo_split examples and properties") {
  const Mat2 J = make_mat2(0, -1, 1, 0);
  auto [c0, a0] = endo_split(Mat2::Identity(), J);
  CHECK(dist(c0, Mat2::Identity()) < 1e-15);
  CHECK(dist(a0, Mat2::Zero()) < 1e-15);
  auto [c1, a1] = endo_split(rotation(0.7), J);
  CHECK(dist(c1, rotation(0.7)) < 1e-15);
  CHECK(dist(a1, Mat2::Zero()) < 1e-15);
  auto [c2, a2] = endo_split(make_mat2(1, 1, 1, -1), J);
  CHECK(dist(c2, Mat2::Zero()) < 1e-15);
  CHECK(dist(a2, make_mat2(1, 1, 1, -1)) < 1e-15);

  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const Sym2 g = random_spd(rng);
    const Mat2 Jg = complex_structure(g);
    const Mat2 M = endo_of_tensor(g, random_sym(rng));
    auto [c, a] = endo_split(M, Jg);
    CHECK(dist(c + a, M) < 1e-12);
    CHECK(dist(c * Jg, Jg * c) < 1e-10);
    CHECK(dist(a, trace_free(M)) < 1e-10);
  }
}

TEST_CASE("pullback metrics") {
  const Sym2 g{1.5, 0.2, 0.7};
  CHECK(dist(pullback_metric(Mat2::Identity(), g).matrix(), g.matrix()) < 1e-15);
  const Mat2 M = make_mat2(1, 2, 3, 4);
  CHECK(dist(pullback_metric(M, {1, 0, 1}).matrix(), M.transpose() * M) < 1e-15);
  CHECK(dist(pullback_metric(rotation(1.1), {1, 0, 1}).matrix(), Mat2::Identity()) < 1e-15);

  const Surface disc = Surface::disc();
  ChartMap shrink{[](int, const Vec2& p) -> Vec2 { return 0.5 * p; },
                  [](int, const Vec2&) -> Mat2 { return 0.5 * Mat2::Identity(); }};
  CHECK(pullback_metric(shrink, TensorField::euclidean(), disc, 0, Vec2(0.2, 0.1)).xx == 0.25);
  ChartMap grow{[](int, const Vec2& p) -> Vec2 { return 2.0 * p; },
                [](int, const Vec2&) -> Mat2 { return 2.0 * Mat2::Identity(); }};
  CHECK_ERROR_KIND(pullback_metric(grow, TensorField::euclidean(), disc, 0, Vec2(0.9, 0.0)),
                   ErrorKind::outside_domain);
}

TEST_CASE("sections: frame choice and tensor reconstruction") {
  const TensorField g = tensor("2 + u^2", "0.3*v", "1 + v^2", TensorRole::metric);
  const TensorField h = tensor("u - v", "u*v", "cos(u)");
  const EASection s = trace_free_section(g, h);
  const TensorField back = tensor_from_section(g, s);
  const EASection s2 = trace_free_section(g, back);
  for (double u : {-0.5, 0.1, 0.6}) {
    for (double v : {-0.4, 0.3}) {
      CHECK(std::abs(s(0, Vec2(u, v)) - s2(0, Vec2(u, v))) < 1e-10);
      // the two Gram-Schmidt orders describe the same endomorphism
      const Sym2 gp = g.at(0, Vec2(u, v));
      const cplx other = trace_free_section(g, h, FrameStart::second)(0, Vec2(u, v));
      CHECK(dist(ea_matrix(other, orthonormal_frame(gp, FrameStart::second)),
                 ea_matrix(s(0, Vec2(u, v)), orthonormal_frame(gp))) < 1e-10);
    }
  }
}

TEST_CASE("H^a agrees across the sphere atlas overlap") {
  const Surface sphere = Surface::sphere_atlas();
  REQUIRE(sphere.charts().size() == 2);
  const TensorField g(TensorRole::metric, [](int, const Vec2& p) {
    const double f = 4.0 / std::pow(1.0 + p.squaredNorm(), 2);
    return Sym2{f, 0.0, f};
  });
  const Sym2 h0_base{1.0, 0.0, 0.0};
  const auto h0 = [&](const Vec2& p) { return Sym2{h0_base.xx + p.x() * p.y(), 0.3 * p.x(), 1.0 - p.y()}; };
  const TensorField h(TensorRole::general, [&](int chart, const Vec2& p) {
    if (chart == 0) return h0(p);
    const Vec2 q = sphere.transition(1, 0, p);
    const Mat2 J = sphere.transition_jacobian(1, 0, p);
    return Sym2::from_matrix(J.transpose() * h0(q).matrix() * J);
  });
  for (double t : {0.0, 0.9, 2.0, 4.4}) {
    const Vec2 p0(std::cos(t), std::sin(t));
    const Vec2 p1 = sphere.transition(0, 1, p0);
    const Mat2 H0 = trace_free(endo_of_tensor(g.at(0, p0), h.at(0, p0)));
    const Mat2 H1 = trace_free(endo_of_tensor(g.at(1, p1), h.at(1, p1)));
    const Mat2 J = sphere.transition_jacobian(0, 1, p0);
    CHECK(dist(J * H0 * J.inverse(), H1) < 1e-8);
  }
}
