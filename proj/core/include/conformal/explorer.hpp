#pragma once

#include "conformal/geometry.hpp"
#include "conformal/winding.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conformal {

/// f = (1 - |z|^2) p with p = sum c_jk z^j conj(z)^k, 0 <= j, k <= d.
struct CandidateFunction {
  int degree = 0;
  /// Row-major: c[j * (degree + 1) + k].
  std::vector<cplx> coefficients;

  static CandidateFunction zero(int degree);
  cplx& at(int j, int k) { return coefficients[static_cast<std::size_t>(j * (degree + 1) + k)]; }
  cplx at(int j, int k) const { return coefficients[static_cast<std::size_t>(j * (degree + 1) + k)]; }

  cplx p(cplx z) const;
  cplx dp_dzbar(cplx z) const;
  cplx f(cplx z) const;
};

/// -z p + (1 - |z|^2) dp/dz-bar.
cplx dbar_candidate(const CandidateFunction& c, cplx z);
EASection dbar_candidate_section(const CandidateFunction& c);

/// Relative winding of dbar f against the boundary reflection on the unit
/// circle. Throws non_vanishing_violation when dbar f vanishes there.
int necessary_winding(const CandidateFunction& c, const WindingOptions& options = {});

struct ExplorerConfig {
  int degree = 1;
  int restarts = 20;
  int iterations = 60;
  std::size_t grid = 128;
  std::uint64_t seed = 42;
  std::vector<double> betas{10.0, 100.0, 1000.0};
};

struct CandidateEvaluation {
  /// min |dbar f| / max |dbar f|, forced to 0 when a zero is certain.
  double objective = 0.0;
  /// grid min / grid max over the closed disc, without the forcing
  double interior_min_ratio = 0.0;
  std::optional<int> winding;
  bool winding_obstructed = false;
  bool zero_found = false;
};

CandidateEvaluation evaluate_candidate(const CandidateFunction& c, std::size_t grid = 128);

struct SearchResult {
  CandidateFunction best;
  CandidateEvaluation evaluation;
  double smoothed = 0.0;
  int best_restart = 0;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool budget_exhausted = false;
  std::string summary;
};

SearchResult search(const ExplorerConfig& config);

}  // namespace conformal
