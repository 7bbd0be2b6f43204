// Serial vs parallel kernels, torus diffusion and sphere transforms.
//
//   ./dirmbo_bench --benchmark_filter=weighted_dot
//   OMP_NUM_THREADS=4 ./dirmbo_bench

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dirmbo/domain.hpp"
#include "dirmbo/heat.hpp"
#include "dirmbo/init.hpp"
#include "dirmbo/kernels.hpp"
#include "dirmbo/sphere_spectral.hpp"

using namespace dirmbo;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

std::vector<Label> random_labels(std::size_t n, int k, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> u(0, k - 1);
  std::vector<Label> v(n);
  for (auto& x : v) x = static_cast<Label>(u(gen));
  return v;
}

template <bool Parallel>
void BM_weighted_dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 1), b = noise(n, 2);
  const kernels::Weights w{0.5, {}};
  for (auto _ : state) {
    double r = Parallel ? kernels::parallel::weighted_dot(a, b, w) : kernels::serial::weighted_dot(a, b, w);
    benchmark::DoNotOptimize(r);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n * 2 * sizeof(double)));
}

template <bool Parallel>
void BM_masked_norms(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = 8;
  const auto v = noise(n, 3);
  const auto l = random_labels(n, k, 4);
  const kernels::Weights w{1.0, {}};
  std::vector<double> out(k);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::masked_norms(l, v, w, out);
    else kernels::serial::masked_norms(l, v, w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Parallel>
void BM_argmax_update(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = 8;
  std::vector<std::vector<double>> comps;
  for (int c = 0; c < k; ++c) comps.push_back(noise(n, 10 + c));
  std::vector<double> best(n);
  std::vector<Label> arg(n);
  std::vector<std::uint8_t> tie(n);
  const kernels::ArgmaxState s{best, arg, tie};
  for (auto _ : state) {
    for (int c = 0; c < k; ++c) {
      if constexpr (Parallel) kernels::parallel::argmax_update(comps[c], static_cast<Label>(c), s);
      else kernels::serial::argmax_update(comps[c], static_cast<Label>(c), s);
    }
    benchmark::DoNotOptimize(arg.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * k));
}

template <bool Parallel>
void BM_voronoi_torus3(benchmark::State& state) {
  auto d = make_torus(3, static_cast<int>(state.range(0)));
  Rng rng(5);
  const auto seeds = sample_seeds(*d, 16, rng);
  std::vector<Label> labels(d->size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::voronoi_torus(d->torus(), seeds.coords, labels);
    else kernels::serial::voronoi_torus(d->torus(), seeds.coords, labels);
    benchmark::DoNotOptimize(labels.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d->size()));
}

void BM_torus_heat(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  auto d = make_torus(dim, static_cast<int>(state.range(1)));
  auto heat = make_heat_operator(d, 0.01);
  auto v = noise(d->size(), 6);
  for (auto _ : state) {
    heat->apply(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d->size()));
}

void BM_sphere_heat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto d = make_sphere(n, 2 * n);
  auto heat = make_heat_operator(d, 0.01);
  auto v = noise(d->size(), 7);
  for (auto _ : state) {
    heat->apply(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d->size()));
}

}  // namespace

BENCHMARK(BM_weighted_dot<false>)->Name("weighted_dot/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_weighted_dot<true>)->Name("weighted_dot/parallel")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_masked_norms<false>)->Name("masked_norms/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_masked_norms<true>)->Name("masked_norms/parallel")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_argmax_update<false>)->Name("argmax_update/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_argmax_update<true>)->Name("argmax_update/parallel")->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_voronoi_torus3<false>)->Name("voronoi_torus3/serial")->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_voronoi_torus3<true>)->Name("voronoi_torus3/parallel")->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torus_heat)->Name("torus_heat")->Args({2, 256})->Args({2, 1024})->Args({3, 64})->Args({3, 128})->Args({4, 32})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sphere_heat)->Name("sphere_heat")->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
