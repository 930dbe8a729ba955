#include "conformal/holo.hpp"

#include "conformal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace conformal {

VectorField::VectorField(std::vector<std::array<expr::Expression, 2>> per_chart) {
  if (per_chart.empty()) throw Error(ErrorKind::config, "vector field needs at least one chart");
  for (auto& f : per_chart) {
    const auto& vars = f[0].variables();
    if (vars.size() != 2) throw Error(ErrorKind::config, "vector field components take two coordinates");
    pieces_.push_back({f, {f[0].differentiate(vars[0]), f[0].differentiate(vars[1]),
                           f[1].differentiate(vars[0]), f[1].differentiate(vars[1])}});
  }
}

VectorField VectorField::parse(const std::array<std::string, 2>& components) {
  const std::vector<std::string> vars{"u", "v"};
  return VectorField({{expr::Expression::parse(components[0], vars),
                       expr::Expression::parse(components[1], vars)}});
}

const VectorField::Piece& VectorField::piece(int chart) const {
  return pieces_.size() == 1 ? pieces_.front() : pieces_.at(static_cast<std::size_t>(chart));
}

cplx VectorField::value(int chart, const Vec2& p) const {
  const auto& f = piece(chart).f;
  const std::array<double, 2> at{p.x(), p.y()};
  return {f[0].eval(at), f[1].eval(at)};
}

Mat2 VectorField::jacobian(int chart, const Vec2& p) const {
  const auto& d = piece(chart).df;
  const std::array<double, 2> at{p.x(), p.y()};
  return make_mat2(d[0].eval(at), d[1].eval(at), d[2].eval(at), d[3].eval(at));
}

cplx VectorField::dbar(int chart, const Vec2& p) const {
  const Mat2 J = jacobian(chart, p);
  return 0.5 * cplx(J(0, 0) - J(1, 1), J(1, 0) + J(0, 1));
}

EASection VectorField::dbar_section() const {
  return EASection([self = *this](int chart, const Vec2& p) { return self.dbar(chart, p); });
}

void require_isothermal(const TensorField& g, const Surface& surface, std::size_t n) {
  for (const auto& chart : surface.charts()) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = surface.grid_point(chart.id, i, j, n);
        if (!surface.in_domain(chart.id, p)) continue;
        const Sym2 m = g.at(chart.id, p);
        const double scale = 0.5 * (m.xx + m.yy);
        if (std::abs(m.xx - m.yy) > 1e-9 * scale || std::abs(m.xy) > 1e-9 * scale) {
          throw Error(ErrorKind::chart_not_isothermal, "chart is not isothermal for the metric");
        }
      }
    }
  }
}

std::vector<ConformalPoint> conformal_points_vf(const VectorField& f, const Surface& surface,
                                                const ZeroSearchOptions& options) {
  return indexed_zeros(f.dbar_section(), surface, options);
}

VerificationReport verify_cor_vf(const VectorField& f, const Surface& surface,
                                 const ZeroSearchOptions& options) {
  return verify_section(f.dbar_section(), TensorField::euclidean(), surface, options);
}

FlowResult integrate_flow(const VectorField& f, const Surface& surface, int chart, const Vec2& p,
                          double t, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step - 1e-12)));
  const double h = t / n;
  Vec2 x = p;
  Mat2 J = Mat2::Identity();
  auto rhs = [&](const Vec2& y, const Mat2& K) {
    if (!surface.in_domain(chart, y)) throw Error(ErrorKind::flow_left_chart, "flow left the chart");
    const cplx v = f.value(chart, y);
    return std::pair<Vec2, Mat2>{Vec2(v.real(), v.imag()), f.jacobian(chart, y) * K};
  };
  for (int k = 0; k < n; ++k) {
    const auto [k1x, k1j] = rhs(x, J);
    const auto [k2x, k2j] = rhs(x + 0.5 * h * k1x, J + 0.5 * h * k1j);
    const auto [k3x, k3j] = rhs(x + 0.5 * h * k2x, J + 0.5 * h * k2j);
    const auto [k4x, k4j] = rhs(x + h * k3x, J + h * k3j);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    J += h / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);
  }
  if (!surface.in_domain(chart, x)) throw Error(ErrorKind::flow_left_chart, "flow left the chart");
  return {x, J};
}

namespace {

cplx pulled_section(const VectorField& f, const Surface& surface, int chart, const Vec2& p, double t) {
  const FlowResult r = integrate_flow(f, surface, chart, p, t);
  const Mat2 h = r.jacobian.transpose() * r.jacobian;
  return ea_components(trace_free(h), Mat2::Identity());
}

}  // namespace

double calibrate_kappa() {
  const Surface disc = Surface::disc();
  const VectorField zbar = VectorField::parse({"u", "-v"});
  const Vec2 p(0.1, 0.05);
  const double t = 1e-3;
  const cplx d1 = pulled_section(zbar, disc, 0, p, t) / t;
  const cplx d2 = pulled_section(zbar, disc, 0, p, 0.5 * t) / (0.5 * t);
  // O(t^2) error, cancelled to O(t^4)
  const cplx extrapolated = (4.0 * d2 - d1) / 3.0;
  return (extrapolated / zbar.dbar(0, p)).real();
}

LinearizationRecord linearization_check(const VectorField& f, const Surface& surface, int chart,
                                        const std::vector<Vec2>& points,
                                        const std::vector<double>& schedule, double kappa) {
  LinearizationRecord record;
  record.kappa = kappa;
  for (double t : schedule) {
    double worst = 0.0;
    for (const Vec2& p : points) {
      const cplx lhs = pulled_section(f, surface, chart, p, t) / t;
      worst = std::max(worst, std::abs(lhs - kappa * f.dbar(chart, p)));
    }
    record.samples.push_back({t, worst});
  }
  for (std::size_t k = 1; k < record.samples.size(); ++k) {
    record.ratios.push_back(record.samples[k].residual / record.samples[k - 1].residual);
  }
  return record;
}

std::array<std::string, 2> torus_example_field(cplx tau) {
  char w[40];
  std::snprintf(w, sizeof w, "%.17g", 2.0 * std::numbers::pi / tau.imag());
  return {std::string("cos(") + w + "*v)", std::string("sin(") + w + "*v)"};
}

}  // namespace conformal
