#include "conformal/theorem.hpp"

#include "conformal/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace conformal {

namespace {

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r(1.0, 0.0);
  for (; n > 0; --n) r *= z;
  return r;
}

}  // namespace

std::vector<ConformalPoint> indexed_zeros(const EASection& s, const Surface& surface,
                                          const ZeroSearchOptions& options, ZeroSearchStats* stats) {
  auto points = find_zeros(s, surface, options, stats);
  for (auto& p : points) p.index = index_of_zero(s, p, options.winding);
  return points;
}

std::vector<ConformalPoint> conformal_points(const TensorField& g, const TensorField& h,
                                             const Surface& surface,
                                             const ZeroSearchOptions& options) {
  return indexed_zeros(trace_free_section(g, h), surface, options);
}

VerificationReport verify_section(const EASection& s, const TensorField& g, const Surface& surface,
                                  const ZeroSearchOptions& options) {
  VerificationReport report;
  report.points = indexed_zeros(s, surface, options, &report.stats);
  for (std::size_t i = 0; i < surface.boundary().size(); ++i) {
    report.windings.push_back(boundary_winding(s, g, surface, i, options.winding));
  }
  report.euler_characteristic = surface.euler_characteristic();
  report.lhs = algebraic_count(report.points);
  report.rhs = 2 * report.euler_characteristic;
  for (int w : report.windings) report.rhs += w;
  report.pass = report.lhs == report.rhs;
  return report;
}

VerificationReport verify_theorem1(const TensorField& g, const TensorField& h,
                                   const Surface& surface, const ZeroSearchOptions& options) {
  return verify_section(trace_free_section(g, h), g, surface, options);
}

void check_prescribed(const Surface& surface, const PrescribedData& data) {
  if (surface.kind() != SurfaceKind::disc && surface.kind() != SurfaceKind::annulus) {
    throw Error(ErrorKind::unsupported_surface,
                "realization is available on the disc and the annulus only");
  }
  if (data.windings.size() != surface.boundary().size()) {
    throw Error(ErrorKind::data_mismatch, "expected " + std::to_string(surface.boundary().size()) +
                                              " boundary windings, got " +
                                              std::to_string(data.windings.size()));
  }
  int total = 0;
  for (const auto& p : data.points) total += p.index;
  int rhs = 2 * surface.euler_characteristic();
  for (int w : data.windings) rhs += w;
  if (total != rhs) {
    throw Error(ErrorKind::data_mismatch, "sum of indices " + std::to_string(total) +
                                              " differs from 2 chi + sum of windings = " +
                                              std::to_string(rhs));
  }
  for (std::size_t k = 0; k < data.points.size(); ++k) {
    const Vec2& p = data.points[k].position;
    if (!surface.in_domain(0, p) || surface.boundary_distance(0, p) < kPrescribedMargin) {
      throw Error(ErrorKind::data_mismatch, "prescribed point is not interior");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if ((data.points[l].position - p).norm() < kPrescribedMargin) {
        throw Error(ErrorKind::data_mismatch, "prescribed points are not distinct");
      }
    }
  }
}

EASection realization_section(const Surface& surface, const PrescribedData& data) {
  check_prescribed(surface, data);
  // z^p on the annulus moves winding between the two boundary circles
  const int p = surface.kind() == SurfaceKind::annulus ? cap_off_index(data.windings[1]) : 0;
  return EASection([points = data.points, p](int, const Vec2& q) {
    const cplx z = to_complex(q);
    cplx s = ipow(z, p);
    for (const auto& pt : points) {
      const cplx d = z - to_complex(pt.position);
      if (pt.index > 0) {
        s *= ipow(d, pt.index);
      } else if (pt.index < 0) {
        s *= ipow(std::conj(d), -pt.index);
      } else {
        s *= std::norm(d);
      }
    }
    return s;
  });
}

TensorField realize_data(const Surface& surface, const TensorField& g, const PrescribedData& data) {
  return tensor_from_section(g, realization_section(surface, data));
}

PrescribedData random_prescribed_data(const Surface& surface, std::mt19937_64& rng) {
  if (surface.kind() != SurfaceKind::disc && surface.kind() != SurfaceKind::annulus) {
    throw Error(ErrorKind::unsupported_surface,
                "realization is available on the disc and the annulus only");
  }
  const bool annulus = surface.kind() == SurfaceKind::annulus;
  const double outer = surface.boundary()[0].radius;
  const double inner = annulus ? surface.boundary()[1].radius : 0.0;
  auto draw_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (;;) {
    PrescribedData data;
    const int n = draw_int(0, 4);
    while (static_cast<int>(data.points.size()) < n) {
      const double a = 2.0 * std::numbers::pi * uniform01(rng);
      double r = 0.0;
      if (annulus) {
        // radii 0.2 .. 0.8 of the way from inner to outer
        r = inner + (0.2 + 0.6 * uniform01(rng)) * (outer - inner);
      } else {
        r = 0.8 * outer * std::sqrt(uniform01(rng));
      }
      const Vec2 q(r * std::cos(a), r * std::sin(a));
      bool separated = true;
      for (const auto& p : data.points) separated = separated && (p.position - q).norm() >= 0.2 * outer;
      if (separated) data.points.push_back({q, draw_int(-3, 3)});
    }
    int total = 0;
    for (const auto& p : data.points) total += p.index;
    if (annulus) {
      const int w_inner = draw_int(-4, 4);
      const int w_outer = total - w_inner;
      if (std::abs(w_outer) > 4) continue;
      data.windings = {w_outer, w_inner};
    } else {
      const int w = total - 2;
      if (std::abs(w) > 4) continue;
      data.windings = {w};
    }
    return data;
  }
}

std::array<std::string, 3> random_torus_tensor(cplx tau, std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed);
  auto coefficient = [&] { return 2.0 * uniform01(rng) - 1.0; };
  auto number = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(x < 0.0 ? "(" : "") + buf + (x < 0.0 ? ")" : "");
  };
  // lattice coordinates s = u - v Re(tau)/Im(tau), t = v / Im(tau)
  const double shear = tau.real() / tau.imag();
  std::array<std::string, 3> out;
  for (auto& entry : out) {
    std::string e = number(coefficient());
    for (int j = 0; j <= degree; ++j) {
      for (int k = -degree; k <= degree; ++k) {
        if (j == 0 && k <= 0) continue;
        const double wu = 2.0 * std::numbers::pi * j;
        const double wv = 2.0 * std::numbers::pi * (k / tau.imag() - j * shear);
        const double damp = 1.0 / (1.0 + j * j + k * k);
        const std::string phase = number(wu) + "*u + " + number(wv) + "*v";
        e += " + " + number(damp * coefficient()) + "*cos(" + phase + ")";
        e += " + " + number(damp * coefficient()) + "*sin(" + phase + ")";
      }
    }
    entry = std::move(e);
  }
  return out;
}

}  // namespace conformal
