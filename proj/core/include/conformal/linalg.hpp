#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <complex>

namespace conformal {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

/// Symmetric 2x2 matrix; symmetry holds by construction.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  Mat2 matrix() const {
    Mat2 m;
    m << xx, xy, xy, yy;
    return m;
  }

  static Sym2 from_matrix(const Mat2& m) { return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)}; }
};

inline Mat2 make_mat2(double a, double b, double c, double d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

inline cplx to_complex(const Vec2& v) { return {v.x(), v.y()}; }

}  // namespace conformal
