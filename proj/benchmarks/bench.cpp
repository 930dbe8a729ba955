#include "conformal/expr.hpp"
#include "conformal/explorer.hpp"
#include "conformal/theorem.hpp"
#include "conformal/winding.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace conformal;

namespace {

const std::vector<std::string> kUV{"u", "v"};

EASection polynomial_section() {
  return EASection([](int, const Vec2& p) {
    const cplx z(p.x(), p.y());
    return (z - 0.3) * (z + cplx(0.2, 0.4)) * std::conj(z - cplx(-0.1, -0.5));
  });
}

void BM_ExprEval(benchmark::State& state) {
  const auto e = expr::Expression::parse("sin(u)*exp(-v^2) + sqrt(1 + u^2*v^2) - atan2(v, u)", kUV);
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval({u, 0.7}));
    u += 1e-9;
  }
}
BENCHMARK(BM_ExprEval);

void BM_ExprDifferentiate(benchmark::State& state) {
  const auto e = expr::Expression::parse("sin(u)*exp(-v^2) + sqrt(1 + u^2*v^2)", kUV);
  for (auto _ : state) benchmark::DoNotOptimize(e.differentiate("u").differentiate("v"));
}
BENCHMARK(BM_ExprDifferentiate);

void BM_WindingNumber(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const LoopCurve c = [k](double t) { return std::exp(cplx(0, k * t)) * (2.0 + std::sin(3 * t)); };
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(c));
}
BENCHMARK(BM_WindingNumber)->Arg(1)->Arg(8)->Arg(64);

void BM_FindZeros(benchmark::State& state) {
  const EASection s = polynomial_section();
  const Surface disc = Surface::disc();
  ZeroSearchOptions o;
  o.grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(s, disc, o));
}
BENCHMARK(BM_FindZeros)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TorusVerify(benchmark::State& state) {
  const Surface torus = Surface::torus(cplx(0.0, 1.0));
  const auto h = random_torus_tensor(cplx(0.0, 1.0), 1000);
  const TensorField H = TensorField::from_expressions(
      TensorRole::general, {{expr::Expression::parse(h[0], kUV), expr::Expression::parse(h[1], kUV),
                             expr::Expression::parse(h[2], kUV)}});
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(TensorField::euclidean(), H, torus));
}
BENCHMARK(BM_TorusVerify)->Unit(benchmark::kMillisecond);

void BM_EvaluateCandidate(benchmark::State& state) {
  CandidateFunction c = CandidateFunction::zero(2);
  for (std::size_t k = 0; k < c.coefficients.size(); ++k) c.coefficients[k] = {std::cos(1.0 + k), std::sin(2.0 * k)};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_candidate(c, 64));
}
BENCHMARK(BM_EvaluateCandidate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
