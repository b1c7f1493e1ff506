#include <benchmark/benchmark.h>

#include <cmath>

#include "nanograting/diffraction.hpp"
#include "nanograting/gravity.hpp"
#include "nanograting/imaging.hpp"
#include "nanograting/presets.hpp"
#include "nanograting/vdwfit.hpp"

namespace {

using namespace nanograting;

constexpr double kL2 = 0.586;

Grating bare(double d, double s) {
  GratingParams p;
  p.label = "bench";
  p.period = d;
  p.slit_width = s;
  p.effective_slit_width = s;
  p.bar_width = d - s;
  return Grating(p);
}

// Raw pattern cost against slit count.
void BM_KirchhoffPattern(benchmark::State& state) {
  const int slits = static_cast<int>(state.range(0));
  const double lambda = 3.5e-12;
  const auto g = bare(100e-9, 35e-9);
  const auto grid = DetectorGrid::symmetric(10.5 * lambda * kL2 / 100e-9, 0.5e-6, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kirchhoff_pattern(g, 2.0 * M_PI / lambda, kL2, slits, grid));
  }
  state.SetComplexityN(slits);
}
BENCHMARK(BM_KirchhoffPattern)->RangeMultiplier(2)->Range(8, 128)->Complexity()->Unit(benchmark::kMillisecond);

void BM_PresetTrace(benchmark::State& state) {
  const auto& mol = presets::molecule("pch2");
  const auto& g = presets::grating("sinx");
  const double fringe = de_broglie_wavelength(mol, 220.0) * kL2 / g.period();
  const TraceModel m{mol, g, presets::source(), presets::beamline(),
                     VelocityBand{220.0, 10.0, static_cast<int>(state.range(0))},
                     DetectorGrid::symmetric(10.5 * fringe, 0.5e-6)};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_trace(m));
}
BENCHMARK(BM_PresetTrace)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DetectorConvolve(benchmark::State& state) {
  Trace t;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    t.positions.push_back(0.5e-6 * static_cast<double>(i));
    t.intensities.push_back(1.0 + std::sin(0.1 * static_cast<double>(i)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(detector_convolve(t, 3.5e-6));
}
BENCHMARK(BM_DetectorConvolve)->Arg(512)->Arg(4096);

void BM_HotColormap(benchmark::State& state) {
  const ColorMapHot map;
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.bytes(x));
    x += 0.000123;
    if (x > 1.0) x = 0.0;
  }
}
BENCHMARK(BM_HotColormap);

void BM_VelocityInversion(benchmark::State& state) {
  const auto geom = presets::beamline();
  const double y2 = fall_position(220.0, geom);
  for (auto _ : state) benchmark::DoNotOptimize(fit_velocity(y2, 0.0, 0.0, geom));
}
BENCHMARK(BM_VelocityInversion);

}  // namespace

BENCHMARK_MAIN();
