#include "conformal/geometry.hpp"

#include "conformal/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conformal {

namespace {

double min_eigenvalue(const Sym2& g) {
  const double mean = 0.5 * (g.xx + g.yy);
  const double half_gap = std::hypot(0.5 * (g.xx - g.yy), g.xy);
  return mean - half_gap;
}

void require_metric(const Sym2& g) {
  if (!(min_eigenvalue(g) > kMetricFloor)) {
    throw Error(ErrorKind::degenerate_metric, "metric is not positive definite");
  }
}

}  // namespace

TensorField::TensorField(TensorRole role, Sampler sampler)
    : role_(role), sampler_(std::move(sampler)) {}

TensorField TensorField::euclidean() {
  return TensorField(TensorRole::metric, [](int, const Vec2&) { return Sym2{1.0, 0.0, 1.0}; });
}

TensorField TensorField::from_expressions(TensorRole role,
                                          std::vector<std::array<expr::Expression, 3>> per_chart) {
  if (per_chart.empty()) throw Error(ErrorKind::config, "tensor field needs at least one chart");
  return TensorField(role, [entries = std::move(per_chart)](int chart, const Vec2& p) {
    const auto& e = entries.size() == 1 ? entries.front() : entries.at(static_cast<std::size_t>(chart));
    const std::array<double, 2> at{p.x(), p.y()};
    return Sym2{e[0].eval(at), e[1].eval(at), e[2].eval(at)};
  });
}

Sym2 TensorField::at(int chart, const Vec2& p) const {
  Sym2 value = sampler_(chart, p);
  if (role_ == TensorRole::metric) require_metric(value);
  return value;
}

Mat2 endo_of_tensor(const Sym2& g, const Sym2& h) {
  require_metric(g);
  const double det = g.xx * g.yy - g.xy * g.xy;
  Mat2 inv;
  inv << g.yy / det, -g.xy / det, -g.xy / det, g.xx / det;
  return inv * h.matrix();
}

Mat2 trace_free(const Mat2& H) {
  Mat2 out = H;
  const double half = 0.5 * (H(0, 0) + H(1, 1));
  out(0, 0) -= half;
  out(1, 1) -= half;
  // exact zero trace
  out(1, 1) = -out(0, 0);
  return out;
}

Mat2 orthonormal_frame(const Sym2& g, FrameStart start) {
  require_metric(g);
  const double det = g.xx * g.yy - g.xy * g.xy;
  Mat2 e;
  if (start == FrameStart::first) {
    const double s = std::sqrt(g.xx);
    const double t = std::sqrt(det / g.xx);
    e << 1.0 / s, -g.xy / (g.xx * t), 0.0, 1.0 / t;
  } else {
    const double s = std::sqrt(g.yy);
    const double t = std::sqrt(det / g.yy);
    e << 1.0 / t, 0.0, -g.xy / (g.yy * t), 1.0 / s;
  }
  return e;
}

cplx ea_components(const Mat2& Ha, const Mat2& frame) {
  const Mat2 m = frame.inverse() * Ha * frame;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (std::abs(m(0, 1) - m(1, 0)) > kEndoTolerance * scale ||
      std::abs(m(0, 0) + m(1, 1)) > kEndoTolerance * scale) {
    throw Error(ErrorKind::hypothesis_violation,
                "endomorphism is not trace-free and g-symmetric");
  }
  return {0.5 * (m(0, 0) - m(1, 1)), 0.5 * (m(0, 1) + m(1, 0))};
}

Mat2 ea_matrix(cplx s, const Mat2& frame) {
  return frame * make_mat2(s.real(), s.imag(), s.imag(), -s.real()) * frame.inverse();
}

Mat2 complex_structure(const Sym2& g) {
  const Mat2 e = orthonormal_frame(g);
  return e * make_mat2(0.0, -1.0, 1.0, 0.0) * e.inverse();
}

std::pair<Mat2, Mat2> endo_split(const Mat2& M, const Mat2& J) {
  const Mat2 jmj = J * M * J;
  return {0.5 * (M - jmj), 0.5 * (M + jmj)};
}

Sym2 pullback_metric(const Mat2& dF, const Sym2& g_at_image) {
  return Sym2::from_matrix(dF.transpose() * g_at_image.matrix() * dF);
}

Sym2 pullback_metric(const ChartMap& F, const TensorField& g, const Surface& surface, int chart,
                     const Vec2& p) {
  const Vec2 q = F.map(chart, p);
  // small tolerance: boundary points map onto the boundary up to rounding
  if (!surface.in_domain(chart, q) && surface.boundary_distance(chart, q) > 1e-8) {
    throw Error(ErrorKind::outside_domain, "map leaves the surface");
  }
  return pullback_metric(F.jacobian(chart, p), g.at(chart, q));
}

TensorField pullback_field(ChartMap F, TensorField g, Surface surface) {
  return TensorField(TensorRole::general,
                     [F = std::move(F), g = std::move(g), surface = std::move(surface)](
                         int chart, const Vec2& p) { return pullback_metric(F, g, surface, chart, p); });
}

EASection trace_free_section(TensorField g, TensorField h, FrameStart start) {
  return EASection([g = std::move(g), h = std::move(h), start](int chart, const Vec2& p) {
    const Sym2 gp = g.at(chart, p);
    const Mat2 H = endo_of_tensor(gp, h.at(chart, p));
    return ea_components(trace_free(H), orthonormal_frame(gp, start));
  });
}

TensorField tensor_from_section(TensorField g, EASection s) {
  return TensorField(TensorRole::general,
                     [g = std::move(g), s = std::move(s)](int chart, const Vec2& p) {
                       const Sym2 gp = g.at(chart, p);
                       const Mat2 S = ea_matrix(s(chart, p), orthonormal_frame(gp));
                       return Sym2::from_matrix(gp.matrix() * S);
                     });
}

double identification_defect(const TensorField& field, const Surface& surface, std::size_t n) {
  double worst = 0.0;
  auto diff = [](const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); };
  if (surface.kind() == SurfaceKind::torus) {
    const cplx tau = surface.tau();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vec2 p = surface.grid_point(0, i, j, n);
        const Mat2 base = field.at(0, p).matrix();
        worst = std::max(worst, diff(base, field.at(0, p + Vec2(1.0, 0.0)).matrix()));
        worst = std::max(worst, diff(base, field.at(0, p + Vec2(tau.real(), tau.imag())).matrix()));
      }
    }
  } else if (surface.charts().size() == 2) {
    // overlap band 0.8 <= |w| <= 1.25 sampled in polar coordinates
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double r = 0.8 + 0.45 * static_cast<double>(i) / static_cast<double>(n - 1);
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        const Vec2 p(r * std::cos(a), r * std::sin(a));
        const Vec2 q = surface.transition(0, 1, p);
        const Mat2 J = surface.transition_jacobian(0, 1, p);
        const Mat2 pulled = J.transpose() * field.at(1, q).matrix() * J;
        worst = std::max(worst, diff(field.at(0, p).matrix(), pulled));
      }
    }
  }
  return worst;
}

}  // namespace conformal
