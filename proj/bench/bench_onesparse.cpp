// OpenMP apply_pairs against the serial reference on random one-sparse layers.

#include "lts/onesparse.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace {

struct Layer {
  lts::CMatrix block;
  std::vector<lts::PairOp> ops;
};

// A random perfect matching of `dim` rows with one random rotation per pair.
Layer make_layer(lts::Index dim, lts::Index columns) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<lts::Index> rows(static_cast<std::size_t>(dim));
  std::iota(rows.begin(), rows.end(), lts::Index{0});
  std::shuffle(rows.begin(), rows.end(), rng);
  Layer l;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const lts::Index m = std::min(rows[i], rows[i + 1]);
    const lts::Index M = std::max(rows[i], rows[i + 1]);
    l.ops.push_back({m, M, lts::two_dim_rotation(std::abs(u(rng)), 3.0 * u(rng), u(rng))});
  }
  l.block = lts::CMatrix::Random(dim, columns);
  return l;
}

void run(benchmark::State& state, bool parallel) {
  const auto dim = static_cast<lts::Index>(state.range(0));
  const auto columns = static_cast<lts::Index>(state.range(1));
  Layer l = make_layer(dim, columns);
  for (auto _ : state) {
    if (parallel) {
      lts::apply_pairs(l.block, l.ops);
    } else {
      lts::apply_pairs_serial(l.block, l.ops);
    }
    benchmark::DoNotOptimize(l.block.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(l.ops.size()) * columns);
}

void BM_apply_pairs_openmp(benchmark::State& state) { run(state, true); }
void BM_apply_pairs_serial(benchmark::State& state) { run(state, false); }

void shapes(benchmark::internal::Benchmark* b) {
  for (int dim : {64, 1024, 16384}) {
    for (int columns : {1, 16}) b->Args({dim, columns});
  }
}

}  // namespace

BENCHMARK(BM_apply_pairs_openmp)->Apply(shapes);
BENCHMARK(BM_apply_pairs_serial)->Apply(shapes);

BENCHMARK_MAIN();
