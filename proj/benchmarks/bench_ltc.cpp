#include <benchmark/benchmark.h>

#include <random>

#include "ltc/approximation.hpp"
#include "ltc/field_expr.hpp"
#include "ltc/random_network.hpp"
#include "ltc/solver.hpp"

namespace {

ltc::LtcNetwork dense_network(std::size_t size) {
  std::mt19937_64 rng(3);
  ltc::RandomNetworkOptions opts;
  opts.min_neurons = opts.max_neurons = size;
  opts.chemical_density = 1.0;
  return ltc::random_network(rng, opts);
}

void BM_NetworkDerivative(benchmark::State& state) {
  const auto net = dense_network(static_cast<std::size_t>(state.range(0)));
  const ltc::StateVector v = ltc::StateVector::Constant(static_cast<Eigen::Index>(net.size()), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(ltc::network_derivative(v, net));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(net.chemical_synapses().size()));
}
BENCHMARK(BM_NetworkDerivative)->Arg(8)->Arg(32)->Arg(128);

void BM_Rk4Step(benchmark::State& state) {
  const auto net = dense_network(static_cast<std::size_t>(state.range(0)));
  ltc::StateVector v = ltc::StateVector::Constant(static_cast<Eigen::Index>(net.size()), 0.1);
  for (auto _ : state) {
    v = ltc::step_rk4(v, net, 1e-3);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_Rk4Step)->Arg(8)->Arg(32)->Arg(128);

void BM_SimulateRealized(benchmark::State& state) {
  const auto field = ltc::parse_field({"x2", "-x1"}, ltc::parse_box("-1.5:1.5,-1.5:1.5"));
  ltc::PipelineConfig cfg;
  cfg.n_features = static_cast<std::size_t>(state.range(0));
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  const auto report = ltc::approximate_trajectory(field, x0, 0.01, cfg);
  const ltc::StateVector u0 = report.ltc.state(0);
  for (auto _ : state) benchmark::DoNotOptimize(ltc::simulate(report.network, u0, {ltc::Method::kRk4, 1e-3, 0.1, 10}));
}
BENCHMARK(BM_SimulateRealized)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FitFeedforward(benchmark::State& state) {
  const auto field = ltc::parse_field({"x2", "-x1"}, ltc::parse_box("-1.5:1.5,-1.5:1.5"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ltc::fit_feedforward(field, static_cast<std::size_t>(state.range(0)), 2000, 1e-8, 7));
  }
}
BENCHMARK(BM_FitFeedforward)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ExpressionEval(benchmark::State& state) {
  const auto expr = ltc::Expression::parse("sin(3*x1) - x2^2 / (1 + exp(-x1 * x2))");
  const double vars[] = {0.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(expr.evaluate(vars));
}
BENCHMARK(BM_ExpressionEval);

}  // namespace

BENCHMARK_MAIN();
