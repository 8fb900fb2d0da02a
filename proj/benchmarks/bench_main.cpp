#include <benchmark/benchmark.h>

#include <random>

#include "qtop/borel.hpp"
#include "qtop/game.hpp"
#include "qtop/qmetric.hpp"
#include "qtop/space.hpp"

namespace {

using namespace qtop;

qm::QMetric powerset_metric(int k) {
  int n = 1 << k;
  qm::QMetric d;
  d.labels.resize(n);
  d.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.dist[x][y] = qm::pomega_qm(topo::Mask(x), topo::Mask(y));
  return d;
}

void BM_axiom_sweep_p4(benchmark::State& state) {
  auto d = powerset_metric(4);
  for (auto _ : state) {
    auto rep = qm::qm_axioms_check(d);
    benchmark::DoNotOptimize(rep.ok());
  }
}
BENCHMARK(BM_axiom_sweep_p4);

void BM_hk_decompose_p2(benchmark::State& state) {
  auto sp = topo::powerset_space(2);
  for (auto _ : state) {
    for (topo::Mask target = 0; target <= sp.full(); ++target) {
      auto w = borel::hk_decompose(sp, target, 4);
      benchmark::DoNotOptimize(w.has_value());
    }
  }
}
BENCHMARK(BM_hk_decompose_p2);

void BM_game_round_trip(benchmark::State& state) {
  std::mt19937_64 rng(11);
  auto sp = topo::random_t0_space(rng, 5);
  auto arena = game::Arena::finite(sp);
  auto ii = game::qm_strategy(qm::order_qm(sp));
  for (auto _ : state) {
    auto run = game::play(arena, game::random_legal(), ii, 10, state.iterations());
    benchmark::DoNotOptimize(run.verdict.status);
  }
}
BENCHMARK(BM_game_round_trip);

void BM_tree_order_total(benchmark::State& state) {
  std::vector<std::vector<int>> nodes{{}};
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].size() < 4)
      for (int b = 0; b < 2; ++b) {
        auto s = nodes[i];
        s.push_back(b);
        nodes.push_back(s);
      }
  for (auto _ : state) {
    int count = 0;
    for (auto& a : nodes)
      for (auto& b : nodes) count += qm::tree_order(a, b);
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_tree_order_total);

}  // namespace

BENCHMARK_MAIN();
