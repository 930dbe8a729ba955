#include "conformal/explorer.hpp"

#include "conformal/errors.hpp"
#include "conformal/theorem.hpp"
#include "parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

namespace conformal {

namespace {

cplx ipow(cplx z, int n) {
  cplx r(1.0, 0.0);
  for (; n > 0; --n) r *= z;
  return r;
}

cplx basis(int j, int k, cplx z) {
  const cplx zb = std::conj(z);
  cplx out = -z * ipow(z, j) * ipow(zb, k);
  if (k > 0) out += (1.0 - std::norm(z)) * static_cast<double>(k) * ipow(z, j) * ipow(zb, k - 1);
  return out;
}

std::vector<cplx> disc_grid(std::size_t n) {
  std::vector<cplx> pts;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      const double y = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n - 1);
      if (x * x + y * y <= 1.0) pts.emplace_back(x, y);
    }
  }
  return pts;
}

struct Smoothed {
  double value = 0.0;
  Eigen::VectorXcd gradient;
};

// softmin_beta of |s| / rms(|s|) and its gradient in the coefficients
Smoothed smoothed_objective(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& c, double beta,
                            bool with_gradient) {
  const Eigen::VectorXcd s = phi * c;
  const Eigen::Index n = s.size();
  const Eigen::VectorXd mag = s.cwiseAbs();
  const double rms = std::sqrt(mag.squaredNorm() / static_cast<double>(n));
  Smoothed out;
  if (!(rms > 0.0)) {
    out.gradient = Eigen::VectorXcd::Zero(c.size());
    return out;
  }
  const Eigen::VectorXd v = mag / rms;
  const double vmin = v.minCoeff();
  const Eigen::VectorXd e = (-beta * (v.array() - vmin)).exp();
  const double total = e.sum();
  out.value = vmin - std::log(total / static_cast<double>(n)) / beta;
  if (!with_gradient) return out;
  const Eigen::VectorXd p = e / total;
  const double weighted = p.dot(mag);
  Eigen::VectorXcd G(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx radial = mag(i) > 0.0 ? p(i) * s(i) / (mag(i) * rms) : cplx(0.0, 0.0);
    G(i) = radial - weighted * s(i) / (static_cast<double>(n) * rms * rms * rms);
  }
  out.gradient = phi.adjoint() * G;
  return out;
}

double normal_draw(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

CandidateFunction CandidateFunction::zero(int degree) {
  if (degree < 0 || degree > 8) throw Error(ErrorKind::config, "bidegree must lie in 0..8");
  CandidateFunction c;
  c.degree = degree;
  c.coefficients.assign(static_cast<std::size_t>((degree + 1) * (degree + 1)), cplx(0.0, 0.0));
  return c;
}

cplx CandidateFunction::p(cplx z) const {
  cplx out(0.0, 0.0);
  for (int j = 0; j <= degree; ++j) {
    for (int k = 0; k <= degree; ++k) out += at(j, k) * ipow(z, j) * ipow(std::conj(z), k);
  }
  return out;
}

cplx CandidateFunction::dp_dzbar(cplx z) const {
  cplx out(0.0, 0.0);
  for (int j = 0; j <= degree; ++j) {
    for (int k = 1; k <= degree; ++k) {
      out += static_cast<double>(k) * at(j, k) * ipow(z, j) * ipow(std::conj(z), k - 1);
    }
  }
  return out;
}

cplx CandidateFunction::f(cplx z) const { return (1.0 - std::norm(z)) * p(z); }

cplx dbar_candidate(const CandidateFunction& c, cplx z) {
  return -z * c.p(z) + (1.0 - std::norm(z)) * c.dp_dzbar(z);
}

EASection dbar_candidate_section(const CandidateFunction& c) {
  return EASection([c](int, const Vec2& q) { return dbar_candidate(c, to_complex(q)); });
}

int necessary_winding(const CandidateFunction& c, const WindingOptions& options) {
  return boundary_winding(dbar_candidate_section(c), TensorField::euclidean(), Surface::disc(), 0,
                          options);
}

CandidateEvaluation evaluate_candidate(const CandidateFunction& c, std::size_t grid) {
  CandidateEvaluation ev;
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0.0;
  for (const cplx z : disc_grid(grid)) {
    const double m = std::abs(dbar_candidate(c, z));
    mn = std::min(mn, m);
    mx = std::max(mx, m);
  }
  if (!(mx > 0.0)) {
    ev.winding_obstructed = true;
    ev.zero_found = true;
    return ev;
  }
  ev.interior_min_ratio = mn / mx;
  try {
    ev.winding = necessary_winding(c);
    ev.winding_obstructed = *ev.winding != -2;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_vanishing_violation) throw;
    ev.winding_obstructed = true;
  }
  ZeroSearchOptions zo;
  zo.grid = grid;
  try {
    ev.zero_found = !find_zeros(dbar_candidate_section(c), Surface::disc(), zo).empty();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_isolated_zero && e.kind() != ErrorKind::zero_on_boundary) throw;
    ev.zero_found = true;
  }
  ev.objective = ev.winding_obstructed || ev.zero_found ? 0.0 : ev.interior_min_ratio;
  return ev;
}

SearchResult search(const ExplorerConfig& config) {
  if (config.degree < 0 || config.degree > 8) throw Error(ErrorKind::config, "bidegree must lie in 0..8");
  if (config.grid < 64) throw Error(ErrorKind::config, "explorer grid must be at least 64");
  if (config.restarts < 1) throw Error(ErrorKind::config, "explorer needs at least one restart");
  const int d = config.degree;
  const int K = (d + 1) * (d + 1);
  const std::vector<cplx> pts = disc_grid(config.grid);
  Eigen::MatrixXcd phi(static_cast<Eigen::Index>(pts.size()), K);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int j = 0; j <= d; ++j) {
      for (int k = 0; k <= d; ++k) phi(static_cast<Eigen::Index>(i), j * (d + 1) + k) = basis(j, k, pts[i]);
    }
  }

  struct Run {
    Eigen::VectorXcd c;
    double smoothed = 0.0;
    bool exhausted = false;
    CandidateEvaluation eval;
  };
  std::vector<Run> runs(static_cast<std::size_t>(config.restarts));

  detail::parallel_for(runs.size(), [&](std::size_t r) {
    std::mt19937_64 rng(config.seed + r);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K);
    if (r == 0 && d >= 1) {
      c(1) = 1.0;  // p = conj(z)
    } else {
      for (int k = 0; k < K; ++k) c(k) = cplx(normal_draw(rng), normal_draw(rng));
    }
    c.normalize();
    bool exhausted = false;
    for (double beta : config.betas) {
      double step = 0.1;
      double value = smoothed_objective(phi, c, beta, false).value;
      int it = 0;
      for (; it < config.iterations; ++it) {
        Smoothed sm = smoothed_objective(phi, c, beta, true);
        Eigen::VectorXcd g = sm.gradient;
        g -= c * c.dot(g).real();  // stay on the unit sphere
        if (!(g.norm() > 1e-14)) break;
        bool improved = false;
        for (int tries = 0; tries < 20; ++tries) {
          Eigen::VectorXcd trial = (c + step * g).normalized();
          const double tv = smoothed_objective(phi, trial, beta, false).value;
          if (tv > value) {
            c = trial;
            value = tv;
            step *= 1.5;
            improved = true;
            break;
          }
          step *= 0.5;
        }
        if (!improved) break;
      }
      exhausted = it == config.iterations;
    }
    Run& run = runs[r];
    run.c = c;
    run.smoothed = smoothed_objective(phi, c, config.betas.back(), false).value;
    run.exhausted = exhausted;
    CandidateFunction cand = CandidateFunction::zero(d);
    for (int k = 0; k < K; ++k) cand.coefficients[static_cast<std::size_t>(k)] = c(k);
    run.eval = evaluate_candidate(cand, config.grid);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    const Run& a = runs[r];
    const Run& b = runs[best];
    if (a.eval.objective > b.eval.objective ||
        (a.eval.objective == b.eval.objective && a.smoothed > b.smoothed)) {
      best = r;
    }
  }
  SearchResult result;
  result.best = CandidateFunction::zero(d);
  for (int k = 0; k < K; ++k) result.best.coefficients[static_cast<std::size_t>(k)] = runs[best].c(k);
  result.evaluation = runs[best].eval;
  result.smoothed = runs[best].smoothed;
  result.best_restart = static_cast<int>(best);
  result.restarts = config.restarts;
  result.iterations = config.iterations;
  result.seed = config.seed;
  result.budget_exhausted = runs[best].exhausted;
  char buf[160];
  if (result.evaluation.objective > 0.0) {
    std::snprintf(buf, sizeof buf,
                  "candidate with dbar f nonvanishing on the evaluation grid at bidegree %d "
                  "(min/max %.6g)",
                  d, result.evaluation.objective);
  } else {
    std::snprintf(buf, sizeof buf, "no nonvanishing candidate found at bidegree <= %d", d);
  }
  result.summary = buf;
  return result;
}

}  // namespace conformal
