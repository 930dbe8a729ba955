#pragma once

#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"
#include "conformal/winding.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace conformal {

/// Both sides of the index identity for one (g, h) pair.
struct VerificationReport {
  std::vector<ConformalPoint> points;
  /// One relative boundary winding per boundary component, in surface order.
  std::vector<int> windings;
  int euler_characteristic = 0;
  int lhs = 0;
  int rhs = 0;
  bool pass = false;
  ZeroSearchStats stats;
};

/// Zeros of s with their indices.
std::vector<ConformalPoint> indexed_zeros(const EASection& s, const Surface& surface,
                                          const ZeroSearchOptions& options = {},
                                          ZeroSearchStats* stats = nullptr);

/// Points where h is conformal to g, with indices.
std::vector<ConformalPoint> conformal_points(const TensorField& g, const TensorField& h,
                                             const Surface& surface,
                                             const ZeroSearchOptions& options = {});

/// Index identity for an arbitrary E^a section s of (Sigma, g).
VerificationReport verify_section(const EASection& s, const TensorField& g, const Surface& surface,
                                  const ZeroSearchOptions& options = {});

VerificationReport verify_theorem1(const TensorField& g, const TensorField& h,
                                   const Surface& surface, const ZeroSearchOptions& options = {});

/// Index carried by the centre of a disc glued onto a boundary circle of winding w.
constexpr int cap_off_index(int w) { return 2 - w; }

struct PrescribedPoint {
  Vec2 position = Vec2::Zero();
  int index = 0;
};

struct PrescribedData {
  std::vector<PrescribedPoint> points;
  std::vector<int> windings;
};

/// Minimum distance of prescribed points from the boundary and from each other.
inline constexpr double kPrescribedMargin = 1e-3;

/// Throws data_mismatch or unsupported_surface when `data` cannot be realized.
void check_prescribed(const Surface& surface, const PrescribedData& data);

/// The section with the prescribed zeros and boundary windings, in frame components.
EASection realization_section(const Surface& surface, const PrescribedData& data);

/// Trace-free h with h(u, v) = g(u, S v) realizing `data` on the disc or annulus.
TensorField realize_data(const Surface& surface, const TensorField& g, const PrescribedData& data);

/// Seeded admissible data: at most 4 points, |index| <= 3, |winding| <= 4.
PrescribedData random_prescribed_data(const Surface& surface, std::mt19937_64& rng);

/// Expression triple (xx, xy, yy) of a random doubly periodic trigonometric
/// polynomial tensor on C / (Z + tau Z) in coordinates (u, v).
std::array<std::string, 3> random_torus_tensor(cplx tau, std::uint64_t seed, int degree = 3);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace conformal
