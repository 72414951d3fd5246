#include "thurston/apollonius.hpp"
#include "thurston/circumsphere.hpp"
#include "thurston/geodesic.hpp"
#include "thurston/theorems.hpp"
#include "thurston/triangle_surface.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace thurston;

namespace {

constexpr auto S = GeometryKind::SphereProduct;
constexpr auto H = GeometryKind::HyperbolicProduct;

void BM_Distance(benchmark::State& state) {
  const GeometryKind g = state.range(0) ? H : S;
  const Point p{1.2, 0.3, -0.4}, q{1.7, -0.5, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(distance(g, p, q));
}
BENCHMARK(BM_Distance)->Arg(0)->Arg(1);

void BM_InvertGeodesic(benchmark::State& state) {
  const Point q = geodesic_point(H, 0.7, 0.3, 1.9);
  for (auto _ : state) benchmark::DoNotOptimize(invert_geodesic(H, q));
}
BENCHMARK(BM_InvertGeodesic);

void BM_Quadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arc_length_quadrature(H, 0.3, 0.7, 2.0, 10000));
}
BENCHMARK(BM_Quadrature);

void BM_Circumsphere(benchmark::State& state) {
  const Tetrahedron t{{Point{1, 0, 0}, Point{0.9, 0.12, -0.1}, Point{1.1, 0.2, 0}, Point{0.8, -0.1, 0.05}}};
  for (auto _ : state) benchmark::DoNotOptimize(circumscribed_sphere(H, t));
}
BENCHMARK(BM_Circumsphere)->Unit(benchmark::kMicrosecond);

void BM_ApolloniusMesh(benchmark::State& state) {
  const ApolloniusSpec spec{S, {1, 0, 0}, {2, 1, 1}, 1.0};
  const Box box{{-3, -3, -3}, {3, 3, 3}};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_isosurface(spec, box, {n, n, n}));
}
BENCHMARK(BM_ApolloniusMesh)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SurfacePoint(benchmark::State& state) {
  const GeodesicTriangle tri = classify_triangle(S, {1, 0, 0}, {-1, -1, 1}, {2, 1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(surface_point(tri, 0.9, 1.1));
}
BENCHMARK(BM_SurfacePoint)->Unit(benchmark::kMillisecond);

void BM_CevaProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const CevaConfig c = random_ceva_config(S, TriangleKind::General, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ceva_product(c));
}
BENCHMARK(BM_CevaProduct);

}  // namespace

BENCHMARK_MAIN();
