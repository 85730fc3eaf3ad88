#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "girthforge/certificate.hpp"
#include "girthforge/cover.hpp"
#include "girthforge/entropy_lp.hpp"
#include "girthforge/pi_graph.hpp"
#include "girthforge/scheme.hpp"

using namespace girthforge;

static void BM_Girth(benchmark::State& state) {
  const auto p = build_pi_graph(6, static_cast<std::size_t>(state.range(0)), 7).result;
  for (auto _ : state) benchmark::DoNotOptimize(girth(p.graph));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Girth)->RangeMultiplier(4)->Range(256, 16384);

static void BM_PiGraph(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_pi_graph(6, static_cast<std::size_t>(state.range(0)), ++seed));
}
BENCHMARK(BM_PiGraph)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMillisecond);

static void BM_EntropyLP(benchmark::State& state) {
  const auto g = Graph::cycle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(entropy_lp_complexity(g, EntropyObjective::minmax));
}
BENCHMARK(BM_EntropyLP)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

static void BM_StarCover(benchmark::State& state) {
  const auto g = fixtures::gd({6, 5, 5});
  for (auto _ : state) benchmark::DoNotOptimize(star_cover_minmax(g.graph));
}
BENCHMARK(BM_StarCover)->Unit(benchmark::kMillisecond);

static void BM_CertifyAudit(benchmark::State& state) {
  std::vector<std::size_t> parts{6};
  for (int k = 1; k < state.range(0) - 1; ++k) parts.push_back(5);
  const auto g = fixtures::gd(parts);
  for (auto _ : state) {
    auto cert = certify_sum_bound(g);
    benchmark::DoNotOptimize(audit_certificate(g.graph, cert, 20, 1));
  }
  state.counters["vertices"] = static_cast<double>(g.graph.vertex_count());
}
BENCHMARK(BM_CertifyAudit)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_SchemeVerify(benchmark::State& state) {
  const auto g = Graph::cycle(6);
  const auto s = realize_scheme(make_star_decomposition(g), static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_perfect(g, enumerate_joint(s)).perfect());
}
BENCHMARK(BM_SchemeVerify)->Arg(7)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_MAIN();
