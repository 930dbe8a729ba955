#include "conformal/diffeo.hpp"

#include "conformal/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace conformal {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return x < 0.0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

// angle difference folded into (-pi/2, pi/2]
double line_step(double from, double to) {
  double d = std::remainder(to - from, kPi);
  if (d <= -kPi / 2.0) d += kPi;
  return d;
}

}  // namespace

DiffeoMap::DiffeoMap(std::vector<std::array<expr::Expression, 2>> per_chart,
                     std::vector<std::size_t> targets)
    : targets_(std::move(targets)) {
  if (per_chart.empty()) throw Error(ErrorKind::config, "map needs at least one chart");
  for (auto& f : per_chart) {
    const auto& vars = f[0].variables();
    if (vars.size() != 2) throw Error(ErrorKind::config, "map components take two coordinates");
    Piece piece{f, {f[0].differentiate(vars[0]), f[0].differentiate(vars[1]),
                    f[1].differentiate(vars[0]), f[1].differentiate(vars[1])}};
    pieces_.push_back(std::move(piece));
  }
}

DiffeoMap DiffeoMap::parse(const std::array<std::string, 2>& components,
                           std::vector<std::size_t> targets) {
  const std::vector<std::string> vars{"u", "v"};
  return DiffeoMap({{expr::Expression::parse(components[0], vars),
                     expr::Expression::parse(components[1], vars)}},
                   std::move(targets));
}

DiffeoMap DiffeoMap::identity() { return parse({"u", "v"}); }

const DiffeoMap::Piece& DiffeoMap::piece(int chart) const {
  return pieces_.size() == 1 ? pieces_.front() : pieces_.at(static_cast<std::size_t>(chart));
}

Vec2 DiffeoMap::operator()(int chart, const Vec2& p) const {
  const auto& f = piece(chart).f;
  const std::array<double, 2> at{p.x(), p.y()};
  return {f[0].eval(at), f[1].eval(at)};
}

Mat2 DiffeoMap::jacobian(int chart, const Vec2& p) const {
  const auto& d = piece(chart).df;
  const std::array<double, 2> at{p.x(), p.y()};
  return make_mat2(d[0].eval(at), d[1].eval(at), d[2].eval(at), d[3].eval(at));
}

ChartMap DiffeoMap::chart_map() const {
  return {[self = *this](int chart, const Vec2& p) { return self(chart, p); },
          [self = *this](int chart, const Vec2& p) { return self.jacobian(chart, p); }};
}

std::size_t DiffeoMap::target(std::size_t component) const {
  return targets_.empty() ? component : targets_.at(component);
}

Mat2 boundary_frame_matrix(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                           std::size_t component, double theta) {
  const BoundaryComponent& ci = surface.boundary().at(component);
  const BoundaryComponent& cj = surface.boundary().at(F.target(component));
  const Vec2 p = ci.position(theta);
  const Vec2 q = F(ci.chart, p);
  if (std::abs((q - cj.center).norm() - cj.radius) > kBoundaryPreservingTolerance * (1.0 + cj.radius)) {
    throw Error(ErrorKind::not_boundary_preserving,
                "boundary component " + std::to_string(component) +
                    " is not mapped onto component " + std::to_string(F.target(component)));
  }
  const Mat2 bp = boundary_frame(g.at(ci.chart, p), ci.velocity(theta)).matrix();
  const Mat2 bq = boundary_frame(g.at(cj.chart, q), cj.velocity(cj.parameter_of(q))).matrix();
  const Mat2 N = bq.inverse() * F.jacobian(ci.chart, p) * bp;
  if (std::abs(N(0, 1)) > kBoundaryPreservingTolerance * (1.0 + N.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::not_boundary_preserving,
                "dF does not map the boundary tangent into the boundary tangent");
  }
  if (!(N(1, 1) > 0.0)) {
    throw Error(ErrorKind::orientation_error, "dF reverses the boundary orientation");
  }
  return N;
}

BoundaryABC extract_abc(const Mat2& N) {
  if (std::abs(N(0, 1)) > kBoundaryPreservingTolerance * (1.0 + N.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::not_boundary_preserving, "frame matrix has a nonzero upper-right entry");
  }
  if (!(N(1, 1) > 0.0)) throw Error(ErrorKind::orientation_error, "frame matrix has c <= 0");
  const double c = N(1, 1);
  const BoundaryABC abc{N(0, 0) / c, N(1, 0) / c, c};
  if (!(abc.a > 0.0)) throw Error(ErrorKind::orientation_error, "frame matrix has a <= 0");
  return abc;
}

Mat2 reconstruct_n(const BoundaryABC& abc) { return abc.c * make_mat2(abc.a, 0.0, abc.b, 1.0); }

BoundaryABC boundary_abc(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                         std::size_t component, double theta) {
  return extract_abc(boundary_frame_matrix(F, g, surface, component, theta));
}

int winding_ab(const std::function<BoundaryABC(double)>& data, const WindingOptions& options) {
  try {
    return winding_number(
        [&](double t) {
          const BoundaryABC d = data(t);
          return cplx(d.a - 1.0, d.b);
        },
        options);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_vanishing_violation) throw;
    throw Error(ErrorKind::conformal_boundary_point, "(a, b) reaches (1, 0): F is conformal at a boundary point");
  }
}

Sym2 q_matrix(const Mat2& N, double c) { return Sym2::from_matrix(N.transpose() * N / (c * c)); }

double top_eigendirection(const Sym2& Q) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(Q.matrix());
  const auto& ev = es.eigenvalues();
  if (!(ev(1) - ev(0) > 1e-9)) {
    throw Error(ErrorKind::eigenvalue_collision, "Q has a repeated eigenvalue");
  }
  const Vec2 v = es.eigenvectors().col(1);
  return line_step(0.0, std::atan2(v.y(), v.x()));
}

int eigendirection_winding(const std::function<Sym2(double)>& Q, const WindingOptions& options) {
  const double limit = kPi / 4.0;
  std::function<double(double, double, double, double, int)> interval =
      [&](double t0, double t1, double a0, double a1, int depth) -> double {
    const double d = line_step(a0, a1);
    if (std::abs(d) < limit) return d;
    if (depth >= options.max_depth) {
      throw Error(ErrorKind::refinement_limit, "eigendirection step could not be certified");
    }
    const double tm = 0.5 * (t0 + t1);
    const double am = top_eigendirection(Q(tm));
    return interval(t0, tm, a0, am, depth + 1) + interval(tm, t1, am, a1, depth + 1);
  };
  const std::size_t n = std::max<std::size_t>(options.initial_samples, 4);
  const double first = top_eigendirection(Q(0.0));
  double prev = first;
  double total = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t0 = 2.0 * kPi * static_cast<double>(k - 1) / static_cast<double>(n);
    const double t1 = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const double next = k == n ? first : top_eigendirection(Q(t1));
    total += interval(t0, t1, prev, next, 0);
    prev = next;
  }
  const double turns = total / kPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw Error(ErrorKind::refinement_limit, "eigendirection does not close up");
  }
  return static_cast<int>(rounded);
}

Theorem2Record verify_theorem2(const DiffeoMap& F, const TensorField& g, const Surface& surface,
                               const WindingOptions& options) {
  Theorem2Record record;
  record.pass = true;
  const EASection pulled = trace_free_section(g, pullback_field(F.chart_map(), g, surface));
  for (std::size_t i = 0; i < surface.boundary().size(); ++i) {
    Theorem2Component c;
    c.component = i;
    c.ab = winding_ab([&](double t) { return boundary_abc(F, g, surface, i, t); }, options);
    c.eigendirection = eigendirection_winding(
        [&](double t) {
          const Mat2 N = boundary_frame_matrix(F, g, surface, i, t);
          return q_matrix(N, N(1, 1));
        },
        options);
    try {
      c.direct = boundary_winding(pulled, g, surface, i, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::non_vanishing_violation) throw;
      throw Error(ErrorKind::conformal_boundary_point, "F^*g is conformal to g at a boundary point");
    }
    c.agree = c.direct == c.ab && c.ab == c.eigendirection;
    record.pass = record.pass && c.agree;
    record.components.push_back(c);
  }
  return record;
}

std::vector<Crossing> boundary_crossings(const DiffeoMap& F, const TensorField& g,
                                         const Surface& surface, std::size_t component,
                                         std::size_t samples) {
  auto abc = [&](double t) { return boundary_abc(F, g, surface, component, t); };
  auto q = [&](double t) {
    const Mat2 N = boundary_frame_matrix(F, g, surface, component, t);
    return top_eigendirection(q_matrix(N, N(1, 1)));
  };
  std::vector<Crossing> out;
  const double h = 1e-5;
  double t0 = 0.0;
  BoundaryABC d0 = abc(t0);
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t1 = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
    const BoundaryABC d1 = abc(t1);
    if ((d0.b < 0.0) != (d1.b < 0.0) && d0.a > 1.0 && d1.a > 1.0) {
      double lo = t0;
      double hi = t1;
      double blo = d0.b;
      for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double bm = abc(mid).b;
        if ((bm < 0.0) == (blo < 0.0)) {
          lo = mid;
          blo = bm;
        } else {
          hi = mid;
        }
      }
      Crossing c;
      c.component = component;
      c.theta = 0.5 * (lo + hi);
      c.a = abc(c.theta).a;
      c.b_prime = (abc(c.theta + h).b - abc(c.theta - h).b) / (2.0 * h);
      c.q_prime = line_step(q(c.theta - h), q(c.theta + h)) / (2.0 * h);
      c.stated = c.b_prime / (c.a - 1.0);
      c.perturbative = c.b_prime / (c.a * c.a - 1.0);
      if (std::abs(c.b_prime) > 1e-6) out.push_back(c);
    }
    t0 = t1;
    d0 = d1;
  }
  return out;
}

AreaCorollaryRecord verify_corollary_area(const DiffeoMap& F, const TensorField& g,
                                          const Surface& surface, const ZeroSearchOptions& options) {
  if (!surface.has_boundary()) {
    throw Error(ErrorKind::hypothesis_violation, "the area corollary needs a surface with boundary");
  }
  AreaCorollaryRecord record;
  for (const auto& c : surface.boundary()) {
    for (int k = 0; k < 256; ++k) {
      const Vec2 p = c.position(2.0 * kPi * k / 256.0);
      record.boundary_identity_defect =
          std::max(record.boundary_identity_defect, (F(c.chart, p) - p).norm());
    }
  }
  if (!(record.boundary_identity_defect < kAreaHypothesisTolerance)) {
    throw Error(ErrorKind::hypothesis_violation, "F is not the identity on the boundary");
  }
  const std::size_t n = 64;
  for (const auto& chart : surface.charts()) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = surface.grid_point(chart.id, i, j, n);
        if (!surface.in_domain(chart.id, p)) continue;
        const Vec2 q = F(chart.id, p);
        const Sym2 gp = g.at(chart.id, p);
        const Sym2 gq = g.at(chart.id, q);
        const double ratio = std::sqrt((gq.xx * gq.yy - gq.xy * gq.xy) / (gp.xx * gp.yy - gp.xy * gp.xy));
        record.area_defect =
            std::max(record.area_defect, std::abs(F.jacobian(chart.id, p).determinant() * ratio - 1.0));
      }
    }
  }
  if (!(record.area_defect < kAreaHypothesisTolerance)) {
    throw Error(ErrorKind::hypothesis_violation, "F does not preserve the area form of g");
  }
  record.report = verify_theorem1(g, pullback_field(F.chart_map(), g, surface), surface, options);
  record.windings_vanish =
      std::all_of(record.report.windings.begin(), record.report.windings.end(), [](int w) { return w == 0; });
  record.pass = record.report.pass && record.windings_vanish &&
                record.report.lhs == 2 * surface.euler_characteristic();
  return record;
}

std::array<std::string, 2> annulus_test_map(double inner, double outer, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr std::array<int, 5> kWindings{1, 2, 3, -1, -2};
  const int k = kWindings[rng() % kWindings.size()];
  const double eps = 0.15 + 0.15 * uniform01(rng);
  const double phase = 2.0 * kPi * uniform01(rng);
  const double a0 = 0.1 * uniform01(rng) - 0.05;
  const double b0 = 0.1 * uniform01(rng) - 0.05;
  const std::string r = "sqrt(u^2 + v^2)";
  const std::string th = "atan2(v, u)";
  const std::string m = "((" + r + " - " + num(outer) + ")*(" + r + " - " + num(inner) + ")/" +
                        num(outer - inner) + ")";
  const std::string arg = num(static_cast<double>(k)) + "*" + th + " + " + num(phase);
  const std::string A = "(" + num(a0) + " + " + num(eps) + "*cos(" + arg + "))";
  const std::string B = "((" + num(b0) + " + " + num(eps) + "*sin(" + arg + "))/" + num(outer) + ")";
  const std::string R = "(" + r + " + " + m + "*" + A + ")";
  const std::string T = "(" + th + " + " + m + "*" + B + ")";
  return {R + "*cos(" + T + ")", R + "*sin(" + T + ")"};
}

std::array<std::string, 2> disc_twist_map(double kappa) {
  const std::string beta = "(" + num(kappa) + "*(1 - u^2 - v^2))";
  return {"u*cos(" + beta + ") - v*sin(" + beta + ")", "u*sin(" + beta + ") + v*cos(" + beta + ")"};
}

std::array<std::string, 2> annulus_dehn_twist(double inner, double outer, double delta) {
  const std::string s = "(2*pi*(sqrt(u^2 + v^2) - " + num(inner) + ")/" + num(outer - inner) + ")";
  const std::string beta = "(" + s + " + " + num(delta) + "*sin(" + s + "))";
  return {"u*cos(" + beta + ") - v*sin(" + beta + ")", "u*sin(" + beta + ") + v*cos(" + beta + ")"};
}

}  // namespace conformal
