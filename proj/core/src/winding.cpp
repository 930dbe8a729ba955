#include "conformal/winding.hpp"

#include "conformal/errors.hpp"
#include "parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace conformal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_step(cplx from, cplx to) {
  const cplx q = to * std::conj(from);
  return std::atan2(q.imag(), q.real());
}

struct Accumulator {
  const LoopCurve& curve;
  const WindingOptions& options;

  double interval(double t0, double t1, cplx z0, cplx z1, int depth) const {
    const double d = angle_step(z0, z1);
    if (std::abs(d) < options.max_step) return d;
    if (depth >= options.max_depth) {
      throw Error(ErrorKind::refinement_limit,
                  "angle step could not be certified below the threshold after " +
                      std::to_string(options.max_depth) + " bisections");
    }
    const double tm = 0.5 * (t0 + t1);
    const cplx zm = curve(tm);
    return interval(t0, tm, z0, zm, depth + 1) + interval(tm, t1, zm, z1, depth + 1);
  }

  int run() const {
    const std::size_t n = std::max<std::size_t>(options.initial_samples, 4);
    const cplx first = curve(0.0);
    cplx prev = first;
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double t0 = kTwoPi * static_cast<double>(k - 1) / static_cast<double>(n);
      const double t1 = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      // the loop closes on the first sample exactly
      const cplx next = k == n ? first : curve(t1);
      total += interval(t0, t1, prev, next, 0);
      prev = next;
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6) {
      throw Error(ErrorKind::refinement_limit, "accumulated angle is not a multiple of 2 pi");
    }
    return static_cast<int>(rounded);
  }
};

void check_active(cplx z, double activation, const char* what) {
  if (!(std::abs(z) > activation)) {
    throw Error(ErrorKind::non_vanishing_violation,
                std::string(what) + " is below the activation tolerance on the loop");
  }
}

}  // namespace

Loop Loop::circle(int chart, const Vec2& center, double radius) {
  return Loop{chart, [center, radius](double t) {
                return Vec2(center + radius * Vec2(std::cos(t), std::sin(t)));
              }};
}

Loop Loop::reversed() const {
  return Loop{chart, [f = at](double t) { return f(kTwoPi - t); }};
}

int winding_number(const LoopCurve& curve, const WindingOptions& options) {
  LoopCurve checked = [&](double t) {
    const cplx z = curve(t);
    check_active(z, options.activation, "curve");
    return z;
  };
  return Accumulator{checked, options}.run();
}

int relative_winding(const LoopCurve& s, const LoopCurve& r, const WindingOptions& options) {
  LoopCurve ratio = [&](double t) {
    const cplx a = s(t);
    const cplx b = r(t);
    check_active(a, options.activation, "section");
    check_active(b, options.activation, "reference section");
    return (a / std::abs(a)) * std::conj(b / std::abs(b));
  };
  return Accumulator{ratio, options}.run();
}

int relative_winding(const EASection& s, const EASection& r, const Loop& loop,
                     const WindingOptions& options) {
  return relative_winding([&](double t) { return s(loop.chart, loop.at(t)); },
                          [&](double t) { return r(loop.chart, loop.at(t)); }, options);
}

namespace {

struct Grid {
  std::size_t n = 0;
  bool periodic = false;
  std::vector<Vec2> points;
  std::vector<cplx> values;
  std::vector<char> valid;

  std::size_t at(std::size_t i, std::size_t j) const { return j * n + i; }

  std::optional<std::size_t> neighbour(std::size_t i, std::size_t j, int di, int dj) const {
    long ii = static_cast<long>(i) + di;
    long jj = static_cast<long>(j) + dj;
    const long nn = static_cast<long>(n);
    if (periodic) {
      ii = (ii + nn) % nn;
      jj = (jj + nn) % nn;
    } else if (ii < 0 || jj < 0 || ii >= nn || jj >= nn) {
      return std::nullopt;
    }
    const std::size_t k = at(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
    if (!valid[k]) return std::nullopt;
    return k;
  }
};

Grid sample_grid(const EASection& s, const Surface& surface, int chart, std::size_t n) {
  Grid g;
  g.n = n;
  g.periodic = surface.charts().at(static_cast<std::size_t>(chart)).periodic;
  g.points.resize(n * n);
  g.values.resize(n * n);
  g.valid.assign(n * n, 0);
  detail::parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = g.at(i, j);
      g.points[k] = surface.grid_point(chart, i, j, n);
      if (!surface.in_domain(chart, g.points[k])) continue;
      g.values[k] = s(chart, g.points[k]);
      g.valid[k] = 1;
    }
  });
  return g;
}

// Phase change of s along a straight segment, refined until each step is
// below the certification threshold. nullopt when refinement fails.
std::optional<double> segment_phase(const EASection& s, int chart, const Vec2& a, const Vec2& b,
                                    cplx za, cplx zb, double activation, int depth) {
  const double d = angle_step(za, zb);
  if (std::abs(d) < std::numbers::pi / 2.0) return d;
  if (depth >= 8) return std::nullopt;
  const Vec2 m = 0.5 * (a + b);
  const cplx zm = s(chart, m);
  if (!(std::abs(zm) > activation)) return std::nullopt;
  auto left = segment_phase(s, chart, a, m, za, zm, activation, depth + 1);
  if (!left) return std::nullopt;
  auto right = segment_phase(s, chart, m, b, zm, zb, activation, depth + 1);
  if (!right) return std::nullopt;
  return *left + *right;
}

// Two converged points in one degenerate (flat) zero: |s| stays below the
// tolerance along the segment joining them.
bool same_well(const EASection& s, int chart, const Vec2& a, const Vec2& b, double tolerance) {
  if ((a - b).norm() > 1e-2) return false;
  for (double t : {0.25, 0.5, 0.75}) {
    try {
      if (!(std::abs(s(chart, a + t * (b - a))) < tolerance)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

// Newton on (Re s, Im s) with a central-difference Jacobian and
// Levenberg-Marquardt damping.
std::optional<Vec2> refine(const EASection& s, int chart, Vec2 x, const ZeroSearchOptions& options) {
  auto f = [&](const Vec2& p) {
    const cplx z = s(chart, p);
    return Vec2(z.real(), z.imag());
  };
  try {
    Vec2 F = f(x);
    const double h = 1e-7;
    double lambda = 1e-9;
    for (int it = 0; it < options.max_iterations; ++it) {
      if (F.norm() == 0.0) break;
      Mat2 J;
      J.col(0) = (f(x + Vec2(h, 0.0)) - f(x - Vec2(h, 0.0))) / (2.0 * h);
      J.col(1) = (f(x + Vec2(0.0, h)) - f(x - Vec2(0.0, h))) / (2.0 * h);
      const Mat2 JtJ = J.transpose() * J;
      const Vec2 g = J.transpose() * F;
      const double scale = std::max(JtJ.diagonal().maxCoeff(), 1e-300);
      bool accepted = false;
      Vec2 step = Vec2::Zero();
      for (int tries = 0; tries < 40 && !accepted; ++tries) {
        const Mat2 A = JtJ + lambda * scale * Mat2::Identity();
        step = -A.ldlt().solve(g);
        if (!step.allFinite()) {
          throw Error(ErrorKind::newton_divergence, "Newton step is not finite");
        }
        const Vec2 Fn = f(x + step);
        if (Fn.norm() < F.norm()) {
          x += step;
          F = Fn;
          lambda = std::max(lambda * 0.1, 1e-15);
          accepted = true;
        } else {
          lambda *= 10.0;
        }
      }
      if (!accepted || step.norm() < options.newton_tolerance) break;
    }
    if (!x.allFinite()) throw Error(ErrorKind::newton_divergence, "Newton iterate is not finite");
    return x;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::newton_divergence) throw;
    // evaluation failed off the domain of the fields: not a usable candidate
    return std::nullopt;
  }
}

}  // namespace

std::vector<ConformalPoint> find_zeros(const EASection& s, const Surface& surface,
                                       const ZeroSearchOptions& options, ZeroSearchStats* stats) {
  std::vector<ConformalPoint> found;
  ZeroSearchStats local;
  const std::size_t n = std::max<std::size_t>(options.grid, 8);

  for (const Chart& chart : surface.charts()) {
    const int c = chart.id;
    Grid grid = sample_grid(s, surface, c, n);
    std::vector<Vec2> candidates;

    // continuum of zeros
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = grid.at(i, j);
        if (!grid.valid[k] || std::abs(grid.values[k]) >= options.zero_tolerance) continue;
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
          auto nb = grid.neighbour(i, j, di, dj);
          if (nb && std::abs(grid.values[*nb]) < options.zero_tolerance &&
              surface.owns(c, grid.points[k])) {
            throw Error(ErrorKind::non_isolated_zero,
                        "section vanishes at adjacent grid nodes: zeros are not isolated");
          }
        }
      }
    }

    // local minima of |s|
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = grid.at(i, j);
        if (!grid.valid[k]) continue;
        const double v = std::abs(grid.values[k]);
        bool minimum = true;
        bool strict = false;
        for (int dj = -1; dj <= 1 && minimum; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            auto nb = grid.neighbour(i, j, di, dj);
            if (!nb) continue;
            const double w = std::abs(grid.values[*nb]);
            if (w < v) {
              minimum = false;
              break;
            }
            if (w > v) strict = true;
          }
        }
        if (minimum && strict) candidates.push_back(grid.points[k]);
      }
    }

    // cells around which s winds
    const std::size_t cells = grid.periodic ? n : n - 1;
    for (std::size_t j = 0; j < cells; ++j) {
      for (std::size_t i = 0; i < cells; ++i) {
        const std::array<std::pair<int, int>, 4> corners{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
        std::array<std::size_t, 4> idx{};
        bool usable = true;
        for (std::size_t q = 0; q < 4 && usable; ++q) {
          auto nb = grid.neighbour(i, j, corners[q].first, corners[q].second);
          if (!nb || !(std::abs(grid.values[*nb]) > options.winding.activation)) {
            usable = false;
          } else {
            idx[q] = *nb;
          }
        }
        if (!usable) continue;
        // unwrapped corner positions so refinement follows straight edges
        const Vec2 base = grid.points[grid.at(i, j)];
        const Vec2 du = surface.grid_point(c, i + 1, j, n) - surface.grid_point(c, i, j, n);
        const Vec2 dv = surface.grid_point(c, i, j + 1, n) - surface.grid_point(c, i, j, n);
        const std::array<Vec2, 4> pos{base, base + du, base + du + dv, base + dv};
        double total = 0.0;
        bool certified = true;
        for (std::size_t q = 0; q < 4 && certified; ++q) {
          const std::size_t r = (q + 1) % 4;
          auto d = segment_phase(s, c, pos[q], pos[r], grid.values[idx[q]], grid.values[idx[r]],
                                 options.winding.activation, 0);
          if (!d) {
            certified = false;
          } else {
            total += *d;
          }
        }
        const long w = certified ? std::lround(total / kTwoPi) : 1;
        if (w != 0) {
          ++local.winding_cells;
          candidates.push_back(base + 0.5 * (du + dv));
        }
      }
    }

    local.candidates += candidates.size();
    for (const Vec2& start : candidates) {
      auto refined = refine(s, c, start, options);
      if (!refined) continue;
      Vec2 p = surface.reduce(c, *refined);
      double residual = 0.0;
      try {
        residual = std::abs(s(c, p));
      } catch (const Error&) {
        continue;
      }
      if (!(residual < options.zero_tolerance)) continue;
      ++local.converged;
      if (surface.boundary_distance(c, p) < options.boundary_margin) {
        throw Error(ErrorKind::zero_on_boundary,
                    "section vanishes on (or within the margin of) the surface boundary");
      }
      if (!surface.in_domain(c, p) || !surface.owns(c, p)) continue;
      bool duplicate = false;
      for (auto& z : found) {
        if (z.chart != c) continue;
        if (surface.distance(c, z.position, p) < options.dedupe_radius ||
            same_well(s, c, z.position, p, options.zero_tolerance)) {
          duplicate = true;
          if (residual < z.residual) {
            z.position = p;
            z.residual = residual;
          }
          break;
        }
      }
      if (!duplicate) found.push_back({c, p, 0, 0.0, residual});
    }
  }

  // isolation radii
  for (auto& z : found) {
    double r = 0.04 * surface.chart_scale(z.chart);
    for (const auto& other : found) {
      if (&other == &z || other.chart != z.chart) continue;
      r = std::min(r, 0.3 * surface.distance(z.chart, z.position, other.position));
    }
    r = std::min(r, 0.5 * surface.boundary_distance(z.chart, z.position));
    r = std::min(r, 0.5 * surface.chart_edge_distance(z.chart, z.position));
    z.isolation_radius = r;
    for (int k = 0; k < 64; ++k) {
      const double a = kTwoPi * k / 64.0;
      const Vec2 q = z.position + r * Vec2(std::cos(a), std::sin(a));
      if (!(std::abs(s(z.chart, q)) >= options.winding.activation)) {
        throw Error(ErrorKind::non_isolated_zero,
                    "section is below the activation tolerance on an isolation circle");
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const ConformalPoint& a, const ConformalPoint& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    if (a.position.x() != b.position.x()) return a.position.x() < b.position.x();
    return a.position.y() < b.position.y();
  });
  if (stats) *stats = local;
  return found;
}

int index_on_circle(const EASection& s, int chart, const Vec2& center, double radius,
                    const WindingOptions& options) {
  const EASection one([](int, const Vec2&) { return cplx(1.0, 0.0); });
  return relative_winding(s, one, Loop::circle(chart, center, radius), options);
}

int index_of_zero(const EASection& s, const ConformalPoint& zero, const WindingOptions& options) {
  if (!(zero.isolation_radius > 0.0)) {
    throw Error(ErrorKind::non_isolated_zero, "zero has no certified isolation radius");
  }
  return index_on_circle(s, zero.chart, zero.position, zero.isolation_radius, options);
}

int algebraic_count(std::span<const ConformalPoint> points) {
  int total = 0;
  for (const auto& p : points) total += p.index;
  return total;
}

BoundaryFrame boundary_frame(const Sym2& g, const Vec2& velocity) {
  const Mat2 e = orthonormal_frame(g);
  Vec2 t = e.inverse() * velocity;
  t.normalize();
  // (nu, tau) positive: nu is tau rotated by -90 degrees in the orthonormal frame
  const Vec2 n(t.y(), -t.x());
  return {e * n, e * t};
}

BoundaryFrame boundary_frame(const Surface& surface, const TensorField& g, std::size_t component,
                             double theta) {
  const BoundaryComponent& b = surface.boundary().at(component);
  const Vec2 p = b.position(theta);
  return boundary_frame(g.at(b.chart, p), b.velocity(theta));
}

Mat2 boundary_reflection_matrix(const Surface& surface, const TensorField& g, std::size_t component,
                                double theta) {
  const BoundaryComponent& b = surface.boundary().at(component);
  const Vec2 p = b.position(theta);
  const Sym2 gp = g.at(b.chart, p);
  const BoundaryFrame f = boundary_frame(gp, b.velocity(theta));
  // R v = 2 g(tau, v) tau - v
  return 2.0 * f.tangent * (f.tangent.transpose() * gp.matrix()) - Mat2::Identity();
}

cplx boundary_reflection_section(const Surface& surface, const TensorField& g,
                                 std::size_t component, double theta) {
  const BoundaryComponent& b = surface.boundary().at(component);
  const Sym2 gp = g.at(b.chart, b.position(theta));
  return ea_components(boundary_reflection_matrix(surface, g, component, theta),
                       orthonormal_frame(gp));
}

int boundary_winding(const EASection& s, const TensorField& g, const Surface& surface,
                     std::size_t component, const WindingOptions& options) {
  const BoundaryComponent& b = surface.boundary().at(component);
  return relative_winding([&](double t) { return s(b.chart, b.position(t)); },
                          [&](double t) { return boundary_reflection_section(surface, g, component, t); },
                          options);
}

}  // namespace conformal
