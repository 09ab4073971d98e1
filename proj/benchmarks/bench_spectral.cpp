#include <benchmark/benchmark.h>

#include <limits>

#include "ghbf/interpolation.hpp"
#include "ghbf/manufactured.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/random_fields.hpp"
#include "ghbf/spectral_ops.hpp"
#include "ghbf/timestepper.hpp"

using namespace ghbf;

namespace {

IncompressibleState state(int n) {
  IncompressibleSpec spec;
  auto s = make_incompressible_state(Grid::create(n), spec);
  s.u = leray_project(s.u);
  return s;
}

void set_points(benchmark::State& st, int n) {
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations()) * n * n * n);
}

void BM_ForwardInverse(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto f = random_bandlimited(Grid::create(n), {1, 8.0, 1.0, 0.0});
  for (auto _ : st) {
    auto back = inverse(f.grid_ptr(), forward(f));
    benchmark::DoNotOptimize(back.data());
  }
  set_points(st, n);
}
BENCHMARK(BM_ForwardInverse)->Arg(32)->Arg(64)->Arg(128);

void BM_Curl(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto u = random_bandlimited_vector(Grid::create(n), {2, 8.0, 1.0, 0.0}, true);
  for (auto _ : st) benchmark::DoNotOptimize(curl(u)[0].data());
  set_points(st, n);
}
BENCHMARK(BM_Curl)->Arg(32)->Arg(64);

void BM_DealiasedCross(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto g = Grid::create(n);
  auto a = random_bandlimited_vector(g, {3, 8.0, 1.0, 0.0}, false);
  auto b = random_bandlimited_vector(g, {4, 8.0, 1.0, 0.0}, false);
  for (auto _ : st) benchmark::DoNotOptimize(cross(a, b)[0].data());
  set_points(st, n);
}
BENCHMARK(BM_DealiasedCross)->Arg(32)->Arg(64);

void BM_LerayProject(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto v = random_bandlimited_vector(Grid::create(n), {5, 8.0, 1.0, 0.0}, false);
  for (auto _ : st) benchmark::DoNotOptimize(leray_project(v)[0].data());
  set_points(st, n);
}
BENCHMARK(BM_LerayProject)->Arg(32)->Arg(64);

void BM_BoussinesqTendency(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto s = state(n);
  auto p = stock_boussinesq_params();
  for (auto _ : st) benchmark::DoNotOptimize(boussinesq_tendency(s, p).du_dt[0].data());
  set_points(st, n);
}
BENCHMARK(BM_BoussinesqTendency)->Arg(32)->Arg(64);

void BM_Rk4Step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto s = state(n);
  auto p = stock_boussinesq_params();
  auto f = model_tendency("boussinesq", p);
  for (auto _ : st) benchmark::DoNotOptimize(rk4_step(s, f, 0.0, 1e-3).u[0].data());
  set_points(st, n);
}
BENCHMARK(BM_Rk4Step)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FoldingResiduals(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto s = state(n);
  auto p = stock_boussinesq_params();
  for (auto _ : st) benchmark::DoNotOptimize(theorem1_residuals(s, p, 1e-6).entries().size());
  set_points(st, n);
}
BENCHMARK(BM_FoldingResiduals)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SpectralInterpolation(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto g = Grid::create(n);
  auto u = random_bandlimited_vector(g, {6, 4.0, 1.0, 0.0}, true);
  SpectralInterpolator interp({u[0], u[1], u[2]});
  std::vector<Point> pts;
  for (int i = 0; i < 256; ++i) pts.push_back({0.01 * i, 0.02 * i, 0.03 * i});
  for (auto _ : st) benchmark::DoNotOptimize(interp.evaluate(pts).data());
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations()) * 256);
}
BENCHMARK(BM_SpectralInterpolation)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
