#pragma once

#include "conformal/expr.hpp"
#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"
#include "conformal/theorem.hpp"
#include "conformal/winding.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conformal {

/// Orientation-preserving self-map of a surface given by coordinate
/// expressions, with its Jacobian differentiated symbolically.
class DiffeoMap {
 public:
  /// One (F^u, F^v) pair per chart; a single pair is shared by all charts.
  /// `targets[i]` is the boundary component that component i is mapped onto;
  /// empty means every component is mapped to itself.
  DiffeoMap(std::vector<std::array<expr::Expression, 2>> per_chart,
            std::vector<std::size_t> targets = {});

  static DiffeoMap parse(const std::array<std::string, 2>& components,
                         std::vector<std::size_t> targets = {});
  static DiffeoMap identity();

  Vec2 operator()(int chart, const Vec2& p) const;
  Mat2 jacobian(int chart, const Vec2& p) const;
  ChartMap chart_map() const;
  std::size_t target(std::size_t component) const;

 private:
  struct Piece {
    std::array<expr::Expression, 2> f;
    std::array<expr::Expression, 4> df;
  };
  const Piece& piece(int chart) const;

  std::vector<Piece> pieces_;
  std::vector<std::size_t> targets_;
};

/// dF along boundary component i written from (nu_i, tau_i) to (nu_j, tau_j).
Mat2 boundary_frame_matrix(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                           std::size_t component, double theta);

struct BoundaryABC {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
};

/// Tolerance on the tangential-to-normal entry of N.
inline constexpr double kBoundaryPreservingTolerance = 1e-8;

/// (a, b, c) with N = c ((a, 0), (b, 1)).
BoundaryABC extract_abc(const Mat2& N);
Mat2 reconstruct_n(const BoundaryABC& abc);

BoundaryABC boundary_abc(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                         std::size_t component, double theta);

/// Winding of theta -> (a - 1, b) about the origin. Throws conformal_boundary_point.
int winding_ab(const std::function<BoundaryABC(double)>& data, const WindingOptions& options = {});

/// N^T N / c^2.
Sym2 q_matrix(const Mat2& N, double c);

/// Degree of the top eigendirection of Q as a map into R / pi Z.
/// Throws eigenvalue_collision.
int eigendirection_winding(const std::function<Sym2(double)>& Q, const WindingOptions& options = {});

/// Angle in (-pi/2, pi/2] of the top eigendirection of Q.
double top_eigendirection(const Sym2& Q);

struct Theorem2Component {
  std::size_t component = 0;
  int direct = 0;
  int ab = 0;
  int eigendirection = 0;
  bool agree = false;
};

struct Theorem2Record {
  std::vector<Theorem2Component> components;
  bool pass = false;
};

Theorem2Record verify_theorem2(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                               const WindingOptions& options = {});

/// A crossing of (a - 1, b) through the positive real axis.
struct Crossing {
  std::size_t component = 0;
  double theta = 0.0;
  double a = 0.0;
  double b_prime = 0.0;
  double q_prime = 0.0;
  /// b' / (a - 1)
  double stated = 0.0;
  /// b' / (a^2 - 1), from perturbing the eigenvector of Q
  double perturbative = 0.0;
};

/// Transversal crossings located by a sign scan on `samples` points and
/// bisection; derivatives by central differences.
std::vector<Crossing> boundary_crossings(const DiffeoMap& F, const TensorField& g,
                                         const Surface& surface, std::size_t component,
                                         std::size_t samples = 2048);

struct AreaCorollaryRecord {
  VerificationReport report;
  double boundary_identity_defect = 0.0;
  double area_defect = 0.0;
  bool windings_vanish = false;
  bool pass = false;
};

/// Tolerance for the boundary-identity and area-preservation hypotheses.
inline constexpr double kAreaHypothesisTolerance = 1e-8;

/// Hypotheses are checked in order: boundary identity, area preservation,
/// then the full index identity for h = F^* g.
AreaCorollaryRecord verify_corollary_area(const DiffeoMap& F, const TensorField& g,
                                          const Surface& surface,
                                          const ZeroSearchOptions& options = {});

/// Annulus self-map that is the identity on both boundary circles with
/// (a - 1, b) winding k times round the outer circle and -k times round the inner.
std::array<std::string, 2> annulus_test_map(double inner, double outer, std::uint64_t seed);

/// Area-preserving twist of the unit disc, rotation by kappa (1 - r^2).
std::array<std::string, 2> disc_twist_map(double kappa);

/// Area-preserving Dehn twist of the annulus, identity on both boundary circles.
std::array<std::string, 2> annulus_dehn_twist(double inner, double outer, double delta);

}  // namespace conformal
