#include <array>
#include <cmath>

#include <benchmark/benchmark.h>

#include "recseq/distributions.hpp"
#include "recseq/ers.hpp"
#include "recseq/moments.hpp"
#include "recseq/records.hpp"
#include "recseq/transform.hpp"

using namespace recseq;

static void BM_HalflineQuadrature(benchmark::State& state) {
  const auto f = [](double y) { return std::exp(-y) * std::log(y); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_halfline(f, Tolerance{}).value);
}
BENCHMARK(BM_HalflineQuadrature);

static void BM_ErsContinuous(benchmark::State& state) {
  const HRep h = to_h_rep(make_family("lognormal"));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ers_compute(h, n).rho.back());
}
BENCHMARK(BM_ErsContinuous)->Arg(6)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_ErsDiscrete(benchmark::State& state) {
  std::vector<Atom> atoms;
  const int k = static_cast<int>(state.range(0));
  for (int i = 0; i < k; ++i) atoms.push_back({double(i), 1.0 / k});
  const HRep h = to_h_rep(make_discrete(atoms, "uniform_atoms"));
  for (auto _ : state) benchmark::DoNotOptimize(ers_compute(h, 30).rho.back());
}
BENCHMARK(BM_ErsDiscrete)->Arg(2)->Arg(64)->Arg(1024)->Unit(benchmark::kMicrosecond);

static void BM_PhiContinuous(benchmark::State& state) {
  const QuantileRep d = make_family("lognormal");
  for (auto _ : state) {
    const TDist t = phi(d);
    benchmark::DoNotOptimize(t.cdf(1.5));
  }
}
BENCHMARK(BM_PhiContinuous)->Unit(benchmark::kMillisecond);

static void BM_InverseEvaluation(benchmark::State& state) {
  const TDist t = state.range(0) == 0 ? t_family("gamma", std::array{2.5, 1.0}) : phi(make_family("gumbel"));
  const HRep h = phi_inverse(t);
  double y = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h(y));
    y = y > 20.0 ? 0.1 : y * 1.1;
  }
  state.SetLabel(state.range(0) == 0 ? "density" : "cdf");
}
BENCHMARK(BM_InverseEvaluation)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_InverseAtoms(benchmark::State& state) {
  const TDist t = t_dense_support_example(21, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const HRep h = phi_inverse(t);
    benchmark::DoNotOptimize(h(3.3));
  }
}
BENCHMARK(BM_InverseAtoms)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

static void BM_QuantileRecords(benchmark::State& state) {
  const QuantileRep d = make_family("exponential");
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_quantile_records(d, 5, reps, 1).values.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QuantileRecords)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_StreamRecords(benchmark::State& state) {
  const QuantileRep d = make_family("bernoulli");
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_stream_records(d, RecordNotion::weak, 2, 64, 10000, 1).values.data());
  }
}
BENCHMARK(BM_StreamRecords)->Unit(benchmark::kMillisecond);

static void BM_HankelFeasibility(benchmark::State& state) {
  const MomentSeq base = lognormal_moment_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stieltjes_feasibility(base).feasible_stieltjes);
}
BENCHMARK(BM_HankelFeasibility)->Arg(8)->Arg(20)->Arg(28);
BENCHMARK_MAIN();
