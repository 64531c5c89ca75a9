#include <benchmark/benchmark.h>

#include "wwrank/models.hpp"
#include "wwrank/rank_transform.hpp"
#include "wwrank/spectra.hpp"

using namespace wwrank;

namespace {

void BM_RankTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample_homogeneous(n, parse_distribution("normal(0,1)"), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_transform(a, TiePolicy::error()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(packed_size(n)));
}
BENCHMARK(BM_RankTransform)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SampleRankMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_rank_matrix(n, ++seed));
}
BENCHMARK(BM_SampleRankMatrix)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SampleTwoBlock(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f1 = parse_distribution("normal(1,1)");
  const auto f2 = parse_distribution("normal(2,1)");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_two_block(n, f1, f2, ++seed));
}
BENCHMARK(BM_SampleTwoBlock)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LeadingEigenpair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = sample_rank_matrix(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(leading_eigenpair(r.matrix()));
}
BENCHMARK(BM_LeadingEigenpair)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FullSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = whiten(sample_rank_matrix(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum(w));
}
BENCHMARK(BM_FullSpectrum)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_OperatorNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = center(sample_rank_matrix(n, 5));
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(c));
}
BENCHMARK(BM_OperatorNorm)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
