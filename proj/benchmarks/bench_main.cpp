#include <benchmark/benchmark.h>

#include "latop/latop.hpp"

namespace {

using namespace latop;

BinaryImage noise_image(Rng& rng, int side, double density) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
  for (auto& p : px) p = rng.bernoulli(density) ? 1 : 0;
  return BinaryImage(side, side, std::move(px), Boundary::Toroidal);
}

void BM_Erode(benchmark::State& state) {
  Rng rng(1);
  const int side = static_cast<int>(state.range(0));
  const BinaryImage x = noise_image(rng, side, 0.6);
  const Window w = Window::rectangle(3, 3);
  const Subset a(w, 0b101010101);
  for (auto _ : state) benchmark::DoNotOptimize(erode(x, a));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Erode)->Arg(32)->Arg(128)->Arg(512);

void BM_ApplyTable(benchmark::State& state) {
  Rng rng(2);
  const int side = static_cast<int>(state.range(0));
  const BinaryImage x = noise_image(rng, side, 0.5);
  const Window w = Window::rectangle(3, 3);
  BooleanFunctionTable f(w);
  for (std::size_t m = 0; m < f.size(); ++m) f.set(static_cast<Mask>(m), rng.bernoulli(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(apply_table(x, w, f));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ApplyTable)->Arg(32)->Arg(128)->Arg(512);

void BM_BasisOf(benchmark::State& state) {
  Rng rng(3);
  std::vector<Offset> offs;
  for (int i = 0; i < state.range(0); ++i) offs.push_back({i / 4, i % 4});
  const Window w(std::move(offs));
  BooleanFunctionTable f(w);
  for (std::size_t m = 0; m < f.size(); ++m) f.set(static_cast<Mask>(m), rng.bernoulli(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(basis_of(f));
}
BENCHMARK(BM_BasisOf)->DenseRange(4, 12, 4);

void BM_SldaEpoch(benchmark::State& state) {
  Rng rng(4);
  const Window w = Window::rectangle(3, 3);
  const ParamPoint target = ParamPoint::erosion_sup(w, {0b000011000, 0b010000010});
  const Operator op = realize(target);
  std::vector<SamplePair> pairs;
  for (int i = 0; i < 20; ++i) {
    BinaryImage x = noise_image(rng, 32, 0.4);
    BinaryImage y = op(x);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  const Dataset data(std::move(pairs));
  const ParamPoint theta0 = random_init(ClassSpec::erosion_sup(w, 2), rng);
  for (auto _ : state) benchmark::DoNotOptimize(slda(theta0, data, SLDAConfig{5, 16, 1, 7, false}));
}
BENCHMARK(BM_SldaEpoch);

}  // namespace

BENCHMARK_MAIN();
