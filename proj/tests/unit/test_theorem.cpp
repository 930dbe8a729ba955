#include "test_util.hpp"

#include "conformal/theorem.hpp"

#include <cmath>

using namespace conformal;
using conformal::testing::tensor;

namespace {

TensorField torus_tensor(cplx tau, std::uint64_t seed) {
  const auto e = random_torus_tensor(tau, seed);
  return tensor(e[0], e[1], e[2]);
}

bool same_points(const VerificationReport& a, const VerificationReport& b, double tol) {
  if (a.points.size() != b.points.size()) return false;
  for (const auto& p : a.points) {
    bool found = false;
    for (const auto& q : b.points) found = found || ((p.position - q.position).norm() < tol && p.index == q.index);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cap-off index") {
  CHECK(cap_off_index(0) == 2);
  CHECK(cap_off_index(2) == 0);
  CHECK(cap_off_index(-2) == 4);
  static_assert(cap_off_index(1) == 1);
}

TEST_CASE("conformal points on the torus") {
  const Surface torus = Surface::torus({0.0, 1.0});
  const TensorField g = TensorField::euclidean();
  CHECK_ERROR_KIND(conformal_points(g, tensor("3", "0", "3"), torus), ErrorKind::non_isolated_zero);
  CHECK(conformal_points(g, tensor("2", "0", "1"), torus).empty());
}

TEST_CASE("random torus tensors satisfy the identity") {
  const cplx tau(0.0, 1.0);
  const Surface torus = Surface::torus(tau);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const TensorField h = torus_tensor(tau, seed);
    CHECK(identification_defect(h, torus) < 1e-9);
    const VerificationReport r = verify_theorem1(TensorField::euclidean(), h, torus);
    CHECK(r.euler_characteristic == 0);
    CHECK(r.windings.empty());
    CHECK(r.lhs == 0);
    CHECK(r.rhs == 0);
    CHECK(r.pass);
  }
  CHECK(random_torus_tensor(tau, 5) == random_torus_tensor(tau, 5));
  CHECK(random_torus_tensor(tau, 5) != random_torus_tensor(tau, 6));
}

TEST_CASE("realization examples") {
  const TensorField g = TensorField::euclidean();
  const Surface disc = Surface::disc();

  const PrescribedData double_zero{{{Vec2::Zero(), 2}}, {0}};
  const EASection s = realization_section(disc, double_zero);
  for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.6)}) CHECK(std::abs(s(0, Vec2(z.real(), z.imag())) - z * z) < 1e-14);
  const VerificationReport r = verify_theorem1(g, realize_data(disc, g, double_zero), disc);
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].index == 2);
  CHECK(r.windings == std::vector<int>{0});
  CHECK(r.pass);

  const PrescribedData empty{{}, {-2}};
  CHECK(std::abs(realization_section(disc, empty)(0, Vec2(0.2, 0.3)) - 1.0) < 1e-15);
  const VerificationReport r2 = verify_theorem1(g, realize_data(disc, g, empty), disc);
  CHECK(r2.points.empty());
  CHECK(r2.windings == std::vector<int>{-2});

  const Surface annulus = Surface::annulus(0.5, 1.0);
  for (int k : {-3, -1, 0, 2, 4}) {
    const PrescribedData d{{}, {k, -k}};
    const VerificationReport ra = verify_theorem1(g, realize_data(annulus, g, d), annulus);
    CHECK(ra.points.empty());
    CHECK(ra.windings == d.windings);
    CHECK(ra.pass);
  }
}

TEST_CASE("realization round trip on random data") {
  const TensorField g = TensorField::euclidean();
  std::mt19937_64 rng(99);
  for (int k = 0; k < 8; ++k) {
    const Surface surface = k % 2 ? Surface::annulus(0.4, 1.0) : Surface::disc();
    const PrescribedData d = random_prescribed_data(surface, rng);
    CHECK_NOTHROW(check_prescribed(surface, d));
    int sum = 0;
    for (const auto& p : d.points) sum += p.index;
    int wsum = 0;
    for (int w : d.windings) wsum += w;
    CHECK(sum == 2 * surface.euler_characteristic() + wsum);
    const VerificationReport r = verify_theorem1(g, realize_data(surface, g, d), surface);
    CHECK(r.pass);
    CHECK(r.windings == d.windings);
    for (const auto& p : d.points) {
      bool found = false;
      for (const auto& q : r.points) found = found || ((q.position - p.position).norm() < 1e-6 && q.index == p.index);
      CHECK(found);
    }
    if (surface.kind() == SurfaceKind::disc) CHECK(r.windings[0] == sum - 2);
  }
}

TEST_CASE("prescribed data is validated") {
  const Surface disc = Surface::disc();
  CHECK_ERROR_KIND(check_prescribed(disc, {{{Vec2::Zero(), 1}}, {0}}), ErrorKind::data_mismatch);
  CHECK_ERROR_KIND(check_prescribed(disc, {{}, {0, 0}}), ErrorKind::data_mismatch);
  CHECK_ERROR_KIND(check_prescribed(disc, {{{Vec2(0.9995, 0.0), 2}}, {0}}), ErrorKind::data_mismatch);
  CHECK_ERROR_KIND(check_prescribed(disc, {{{Vec2(0.1, 0.0), 1}, {Vec2(0.1, 0.0), 1}}, {0}}),
                   ErrorKind::data_mismatch);
  CHECK_ERROR_KIND(check_prescribed(Surface::torus({0, 1}), {{}, {}}), ErrorKind::unsupported_surface);
}

TEST_CASE("conformal rescaling of g leaves the points unchanged") {
  const Surface disc = Surface::disc();
  const TensorField g = TensorField::euclidean();
  const TensorField h = tensor("u^2 - v^2 + 0.1", "2*u*v - 0.05", "-(u^2 - v^2)");
  const TensorField g2 = tensor("exp(2*(u*v + 0.3*sin(u)))", "0", "exp(2*(u*v + 0.3*sin(u)))", TensorRole::metric);
  const VerificationReport a = verify_theorem1(g, h, disc);
  const VerificationReport b = verify_theorem1(g2, h, disc);
  CHECK(a.pass);
  CHECK(b.pass);
  CHECK(same_points(a, b, 1e-6));
  CHECK(a.windings == b.windings);
}

TEST_CASE("adding a multiple of g to h changes nothing") {
  const Surface disc = Surface::disc();
  const TensorField g = tensor("1 + 0.3*u^2", "0.1*v", "1", TensorRole::metric);
  const TensorField h = tensor("u - 0.1", "v + 0.2*u*v", "-u");
  const TensorField h2(TensorRole::general, [&](int c, const Vec2& p) {
    const Sym2 a = h.at(c, p), b = g.at(c, p);
    return Sym2{a.xx + 2.5 * b.xx, a.xy + 2.5 * b.xy, a.yy + 2.5 * b.yy};
  });
  const VerificationReport a = verify_theorem1(g, h, disc);
  const VerificationReport b = verify_theorem1(g, h2, disc);
  CHECK(same_points(a, b, 1e-9));
  CHECK(a.windings == b.windings);
  CHECK(a.lhs == b.lhs);
}
