#include "conformal/surface.hpp"

#include "conformal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conformal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::disc: return "disc";
    case SurfaceKind::annulus: return "annulus";
    case SurfaceKind::torus: return "torus";
    case SurfaceKind::sphere_atlas: return "sphere";
    case SurfaceKind::embedded_genus0: return "embedded-genus0";
  }
  return "unknown";
}

Vec2 BoundaryComponent::position(double theta) const {
  const double a = orientation * theta;
  return center + radius * Vec2(std::cos(a), std::sin(a));
}

Vec2 BoundaryComponent::velocity(double theta) const {
  const double a = orientation * theta;
  return orientation * radius * Vec2(-std::sin(a), std::cos(a));
}

double BoundaryComponent::parameter_of(const Vec2& q) const {
  const Vec2 d = q - center;
  return orientation * std::atan2(d.y(), d.x());
}

Surface Surface::disc(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::config, "disc radius must be positive");
  Surface s;
  s.kind_ = SurfaceKind::disc;
  s.outer_ = radius;
  Chart c;
  c.bounds = {Vec2(-radius, -radius), Vec2(radius, radius)};
  s.charts_.push_back(c);
  s.boundary_.push_back({0, Vec2::Zero(), radius, +1});
  return s;
}

Surface Surface::annulus(double inner, double outer) {
  if (!(inner > 0.0 && outer > inner)) {
    throw Error(ErrorKind::config, "annulus needs 0 < inner < outer");
  }
  Surface s;
  s.kind_ = SurfaceKind::annulus;
  s.inner_ = inner;
  s.outer_ = outer;
  Chart c;
  c.bounds = {Vec2(-outer, -outer), Vec2(outer, outer)};
  s.charts_.push_back(c);
  s.boundary_.push_back({0, Vec2::Zero(), outer, +1});
  s.boundary_.push_back({0, Vec2::Zero(), inner, -1});
  return s;
}

Surface Surface::torus(cplx tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::config, "torus modulus needs Im(tau) > 0");
  Surface s;
  s.kind_ = SurfaceKind::torus;
  s.tau_ = tau;
  Chart c;
  const double x0 = std::min(0.0, tau.real());
  const double x1 = std::max(1.0, 1.0 + tau.real());
  c.bounds = {Vec2(x0, 0.0), Vec2(x1, tau.imag())};
  c.periodic = true;
  s.charts_.push_back(c);
  return s;
}

Surface Surface::sphere_atlas(double extent) {
  if (!(extent > 1.2)) throw Error(ErrorKind::config, "sphere chart extent must exceed 1.2");
  Surface s;
  s.kind_ = SurfaceKind::sphere_atlas;
  s.extent_ = extent;
  for (int id = 0; id < 2; ++id) {
    Chart c;
    c.id = id;
    c.bounds = {Vec2(-extent, -extent), Vec2(extent, extent)};
    s.charts_.push_back(c);
  }
  return s;
}

Surface Surface::embedded_genus0(double extent) {
  Surface s = sphere_atlas(extent);
  s.kind_ = SurfaceKind::embedded_genus0;
  return s;
}

int Surface::euler_characteristic() const {
  switch (kind_) {
    case SurfaceKind::disc: return 1;
    case SurfaceKind::annulus: return 0;
    case SurfaceKind::torus: return 0;
    case SurfaceKind::sphere_atlas:
    case SurfaceKind::embedded_genus0: return 2;
  }
  return 0;
}

bool Surface::in_domain(int chart, const Vec2& p) const {
  switch (kind_) {
    case SurfaceKind::disc: return p.norm() <= outer_;
    case SurfaceKind::annulus: {
      const double r = p.norm();
      return r >= inner_ && r <= outer_;
    }
    case SurfaceKind::torus: return true;
    case SurfaceKind::sphere_atlas:
    case SurfaceKind::embedded_genus0: return charts_.at(chart).bounds.contains(p);
  }
  return false;
}

bool Surface::owns(int chart, const Vec2& p) const {
  switch (kind_) {
    case SurfaceKind::sphere_atlas:
    case SurfaceKind::embedded_genus0: {
      const double r2 = p.squaredNorm();
      return chart == 0 ? r2 <= 1.0 : r2 < 1.0;
    }
    default: return in_domain(chart, p);
  }
}

double Surface::boundary_distance(int /*chart*/, const Vec2& p) const {
  switch (kind_) {
    case SurfaceKind::disc: return std::abs(outer_ - p.norm());
    case SurfaceKind::annulus: {
      const double r = p.norm();
      return std::min(std::abs(r - inner_), std::abs(outer_ - r));
    }
    default: return kInf;
  }
}

double Surface::chart_edge_distance(int chart, const Vec2& p) const {
  if (kind_ != SurfaceKind::sphere_atlas && kind_ != SurfaceKind::embedded_genus0) return kInf;
  const Box& b = charts_.at(chart).bounds;
  return std::min({p.x() - b.lo.x(), b.hi.x() - p.x(), p.y() - b.lo.y(), b.hi.y() - p.y()});
}

Vec2 Surface::reduce(int /*chart*/, const Vec2& p) const {
  if (kind_ != SurfaceKind::torus) return p;
  double t = p.y() / tau_.imag();
  double s = p.x() - t * tau_.real();
  s -= std::floor(s);
  t -= std::floor(t);
  return Vec2(s + t * tau_.real(), t * tau_.imag());
}

double Surface::distance(int chart, const Vec2& a, const Vec2& b) const {
  if (kind_ != SurfaceKind::torus) return (a - b).norm();
  const Vec2 d = reduce(chart, a - b);
  double best = kInf;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Vec2 shift(i + j * tau_.real(), j * tau_.imag());
      best = std::min(best, (d + shift).norm());
    }
  }
  return best;
}

Vec2 Surface::grid_point(int chart, std::size_t i, std::size_t j, std::size_t n) const {
  if (kind_ == SurfaceKind::torus) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    const double t = static_cast<double>(j) / static_cast<double>(n);
    return Vec2(s + t * tau_.real(), t * tau_.imag());
  }
  const Box& b = charts_.at(chart).bounds;
  const double h = 1.0 / static_cast<double>(n - 1);
  return Vec2(b.lo.x() + static_cast<double>(i) * h * b.size().x(),
              b.lo.y() + static_cast<double>(j) * h * b.size().y());
}

double Surface::chart_scale(int chart) const {
  if (kind_ == SurfaceKind::torus) return std::min(1.0, tau_.imag());
  const Vec2 size = charts_.at(chart).bounds.size();
  return std::min(size.x(), size.y());
}

Vec2 Surface::transition(int from, int to, const Vec2& p) const {
  if (from == to) return p;
  if (kind_ != SurfaceKind::sphere_atlas && kind_ != SurfaceKind::embedded_genus0) {
    throw Error(ErrorKind::outside_domain, "surface has a single chart");
  }
  const double r2 = p.squaredNorm();
  if (r2 == 0.0) throw Error(ErrorKind::outside_domain, "chart pole is not in the overlap");
  return Vec2(p.x() / r2, -p.y() / r2);
}

Mat2 Surface::transition_jacobian(int from, int to, const Vec2& p) const {
  if (from == to) return Mat2::Identity();
  const cplx w = to_complex(p);
  if (w == 0.0) throw Error(ErrorKind::outside_domain, "chart pole is not in the overlap");
  const cplx d = -1.0 / (w * w);
  return make_mat2(d.real(), -d.imag(), d.imag(), d.real());
}

}  // namespace conformal
