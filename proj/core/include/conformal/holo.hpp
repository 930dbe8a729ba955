#pragma once

#include "conformal/expr.hpp"
#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"
#include "conformal/theorem.hpp"
#include "conformal/winding.hpp"

#include <array>
#include <string>
#include <vector>

namespace conformal {

/// f d/dz in isothermal charts, f = P + iQ.
class VectorField {
 public:
  /// One (P, Q) pair per chart; a single pair is shared by all charts.
  explicit VectorField(std::vector<std::array<expr::Expression, 2>> per_chart);

  static VectorField parse(const std::array<std::string, 2>& components);

  cplx value(int chart, const Vec2& p) const;
  /// Real Jacobian of (P, Q).
  Mat2 jacobian(int chart, const Vec2& p) const;
  /// df / dz-bar = ((P_u - Q_v) + i (Q_u + P_v)) / 2.
  cplx dbar(int chart, const Vec2& p) const;
  EASection dbar_section() const;

 private:
  struct Piece {
    std::array<expr::Expression, 2> f;
    std::array<expr::Expression, 4> df;
  };
  const Piece& piece(int chart) const;

  std::vector<Piece> pieces_;
};

/// Throws chart_not_isothermal unless g is a multiple of the identity at
/// every node of an n-by-n grid (relative tolerance 1e-9).
void require_isothermal(const TensorField& g, const Surface& surface, std::size_t n = 32);

std::vector<ConformalPoint> conformal_points_vf(const VectorField& f, const Surface& surface,
                                                const ZeroSearchOptions& options = {});

/// [C] = 2 chi + sum w_i for the section dbar f, windings against the chart's Euclidean reflection.
VerificationReport verify_cor_vf(const VectorField& f, const Surface& surface,
                                 const ZeroSearchOptions& options = {});

/// Flow map and its Jacobian at time t by classical RK4 with steps of at most `step`.
struct FlowResult {
  Vec2 point;
  Mat2 jacobian;
};
FlowResult integrate_flow(const VectorField& f, const Surface& surface, int chart, const Vec2& p,
                          double t, double step = 1e-3);

struct LinearizationSample {
  double t = 0.0;
  double residual = 0.0;
};

struct LinearizationRecord {
  double kappa = 0.0;
  std::vector<LinearizationSample> samples;
  /// residual(t_{k+1}) / residual(t_k)
  std::vector<double> ratios;
};

/// The constant relating (d/dt)(F_t^* g)^a at t = 0 and dbar f, from f = conj(z)
/// on the Euclidean disc by Richardson extrapolation.
double calibrate_kappa();

/// Sup over `points` of |(F_t^* g)^a / t - kappa dbar f| for each t, g Euclidean.
LinearizationRecord linearization_check(const VectorField& f, const Surface& surface, int chart,
                                        const std::vector<Vec2>& points,
                                        const std::vector<double>& schedule, double kappa);

/// exp(2 pi i Im(z) / Im(tau)), periodic on C / (Z + tau Z).
std::array<std::string, 2> torus_example_field(cplx tau);

}  // namespace conformal
