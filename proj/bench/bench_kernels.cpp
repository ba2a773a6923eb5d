#include "contact9/simplicial/complex.hpp"
#include "contact9/simplicial/kernels.hpp"
#include "contact9/simplicial/standard.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace contact9;
using namespace contact9::simplicial;

namespace {

// CP2 x S2, a 6-dimensional complex with a few thousand top simplices
const SimplicialComplex& workload() {
  static const SimplicialComplex k = product(standard::cp2(), standard::sphere(2));
  return k;
}

std::vector<Integer> values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Integer> v(n);
  for (auto& x : v) x = static_cast<long long>(rng() % 7) - 3;
  return v;
}

kernels::Bits bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  kernels::Bits v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(rng() & 1U);
  return v;
}

template <auto Kernel>
void coboundary(benchmark::State& state) {
  const auto& k = workload();
  const int d = static_cast<int>(state.range(0));
  const auto x = values(k.count(d), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(k, d, x));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(k.count(d + 1)));
}

template <auto Kernel>
void cup(benchmark::State& state) {
  const auto& k = workload();
  const int p = static_cast<int>(state.range(0));
  const int q = k.dimension() - p;
  const auto x = values(k.count(p), 2);
  const auto y = values(k.count(q), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(k, x, p, y, q));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(k.count(p + q)));
}

template <auto Kernel>
void cup_i(benchmark::State& state) {
  const auto& k = workload();
  const int p = static_cast<int>(state.range(0));
  const int i = static_cast<int>(state.range(1));
  const auto x = bits(k.count(p), 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(k, x, p, x, p, i));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(k.count(2 * p - i)));
}

}  // namespace

BENCHMARK(coboundary<kernels::coboundary_serial>)->Name("coboundary/serial")->Arg(2)->Arg(4);
BENCHMARK(coboundary<kernels::coboundary_parallel>)->Name("coboundary/parallel")->Arg(2)->Arg(4);
BENCHMARK(cup<kernels::cup_serial>)->Name("cup/serial")->Arg(2)->Arg(3);
BENCHMARK(cup<kernels::cup_parallel>)->Name("cup/parallel")->Arg(2)->Arg(3);
BENCHMARK(cup_i<kernels::cup_i_mod2_serial>)->Name("cup_i/serial")->Args({3, 0})->Args({3, 1})->Args({4, 2});
BENCHMARK(cup_i<kernels::cup_i_mod2_parallel>)->Name("cup_i/parallel")->Args({3, 0})->Args({3, 1})->Args({4, 2});

BENCHMARK_MAIN();
