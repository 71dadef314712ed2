#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "pic/mosaic.hpp"
#include "pic/picgraph.hpp"
#include "pic/picnorm.hpp"
#include "pic/variation.hpp"

using namespace pic;

namespace {

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back({u(rng), u(rng)});
  return v;
}

PlaneFunction wave() {
  return PlaneFunction([](Point z) { return Complex(std::sin(5 * z.x), std::cos(3 * z.y)); }, "wave");
}

// k segments zigzagging through k unit squares in a row
PicSet zigzag(std::size_t k, std::size_t samples) {
  PicSet ps;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = static_cast<double>(i);
    const Point a{x, 0}, b{x + 1, 0}, c{x + 1, 1}, d{x, 1};
    ps.mosaic.polygons.push_back(ConvexPolygon({a, b, c, d}));
    ps.curves.push_back(i % 2 == 0 ? Curve::segment(d, b, samples) : Curve::segment(a, c, samples));
  }
  return ps;
}

PicGraph ladder(std::size_t rungs) {
  PicGraph g;
  for (std::size_t i = 0; i < 2 * rungs; ++i) g.vertices.push_back({double(i / 2), double(i % 2)});
  std::size_t id = 0;
  for (std::size_t i = 0; i < rungs; ++i) {
    g.edges.push_back({2 * i, 2 * i + 1, id++});
    if (i + 1 < rungs) {
      g.edges.push_back({2 * i, 2 * i + 2, id++});
      g.edges.push_back({2 * i + 1, 2 * i + 3, id++});
    }
  }
  return g;
}

}  // namespace

static void BM_VfExact(benchmark::State& state) {
  const PointList l(random_points(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(vf_exact(l).count);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VfExact)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_VarLower(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2);
  SearchBudget b;
  b.restarts = 8;
  b.iterations = 200;
  for (auto _ : state) benchmark::DoNotOptimize(var_lower(wave(), pts, b).value);
}
BENCHMARK(BM_VarLower)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_PicNorm(benchmark::State& state) {
  const PicSet ps = zigzag(static_cast<std::size_t>(state.range(0)), 64);
  const PlaneFunction f = wave();
  for (auto _ : state) benchmark::DoNotOptimize(pic_norm(f, ps));
}
BENCHMARK(BM_PicNorm)->Arg(4)->Arg(32);

static void BM_IsHomeomorphic(benchmark::State& state) {
  const PicGraph a = ladder(static_cast<std::size_t>(state.range(0)));
  PicGraph b = a;
  std::reverse(b.edges.begin(), b.edges.end());
  for (auto _ : state) benchmark::DoNotOptimize(is_homeomorphic(a, b).found);
}
BENCHMARK(BM_IsHomeomorphic)->Arg(4)->Arg(12);
BENCHMARK_MAIN();
