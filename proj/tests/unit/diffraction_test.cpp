#include <cmath>
#include <random>

#include "doctest.h"
#include "nanograting/diffraction.hpp"
#include "nanograting/errors.hpp"
#include "nanograting/presets.hpp"
#include "nanograting/vdwfit.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nanograting;
using testutil::bare_grating;
using testutil::normalized_rms;

namespace {

const Molecule pch2_rounded("PcH2", 8.5e-25);
constexpr double L2 = 0.586;

std::vector<double> fraunhofer_on(const DetectorGrid& grid, int n, double d, double s, double lambda) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = grid.position(i);
    out[i] = oracle::fraunhofer(x / std::hypot(x, L2), n, d, s, lambda);
  }
  return out;
}

}  // namespace

TEST_CASE("wave number") {
  CHECK(wave_number(pch2_rounded, 220.0) == doctest::Approx(1.77e12).epsilon(3e-3));
  CHECK(wave_number(pch2_rounded, 440.0) == doctest::Approx(2.0 * wave_number(pch2_rounded, 220.0)));
  CHECK(wave_number(pch2_rounded, 220.0) * de_broglie_wavelength(pch2_rounded, 220.0) ==
        doctest::Approx(2.0 * oracle::pi).epsilon(1e-15));
}

TEST_CASE("coherence") {
  const auto geom = presets::beamline();
  const auto src = presets::source();
  const double lambda = de_broglie_wavelength(pch2_rounded, 260.0);
  const auto c = coherence(src, geom, lambda, 101e-9);
  CHECK(c.coherence_angle == doctest::Approx(3.0e-6).epsilon(0.01));

  // 1.5 * 2 pm / 1 um = 3 urad exactly.
  const auto c3 = coherence(SourceModel(1e-6, 220.0), geom, 2e-12, 101e-9);
  CHECK(c3.coherence_angle == doctest::Approx(3e-6));
  CHECK(c3.n_coherent_slits == 46);

  const auto c0 = coherence(src, geom, 0.0, 101e-9);
  CHECK(c0.n_coherent_slits == 1);
  CHECK_THROWS_AS(coherence(src, geom, 1e-12, 101e-9, 0.0), DomainError);
}

TEST_CASE("single slit matches the sinc^2 envelope") {
  const double lambda = 3.5e-12;
  const auto grid = DetectorGrid::symmetric(100e-6, 0.5e-6, 0.0);
  const auto t = kirchhoff_pattern(bare_grating(100e-9, 50e-9), 2.0 * oracle::pi / lambda, L2, 1, grid);
  CHECK(normalized_rms(t.intensities, fraunhofer_on(grid, 1, 100e-9, 50e-9, lambda)) < 0.01);

  // Envelope zeros at m * lambda * L2 / s.
  const double zero = lambda * L2 / 50e-9;
  const double peak = t.max();
  for (int m : {-2, -1, 1, 2}) {
    const auto i = static_cast<std::size_t>(std::lround((m * zero - grid.x_min) / grid.pitch));
    CHECK(t.intensities[i] / peak < 2e-3);
  }
}

TEST_CASE("ten slits match the multi-slit Fraunhofer formula") {
  const double lambda = 3.5e-12;
  const auto grid = DetectorGrid::symmetric(150e-6, 0.25e-6, 0.0);
  for (double s : {20e-9, 35e-9, 50e-9}) {
    CAPTURE(s);
    const auto t = kirchhoff_pattern(bare_grating(100e-9, s), 2.0 * oracle::pi / lambda, L2, 10, grid);
    CHECK(normalized_rms(t.intensities, fraunhofer_on(grid, 10, 100e-9, s, lambda)) < 0.01);
  }
}

TEST_CASE("mirror symmetry and non-negativity") {
  const double lambda = 3.5e-12;
  const auto grid = DetectorGrid::symmetric(80e-6, 0.5e-6, 0.0);
  for (int n : {1, 2, 7, 10}) {
    const auto t = kirchhoff_pattern(bare_grating(105e-9, 15e-9), 2.0 * oracle::pi / lambda, L2, n, grid);
    const std::size_t size = t.size();
    const double peak = t.max();
    for (std::size_t i = 0; i < size; ++i) {
      CHECK(t.intensities[i] >= 0.0);
      CHECK(std::abs(t.intensities[i] - t.intensities[size - 1 - i]) <= 1e-10 * peak);
    }
  }
}

TEST_CASE("halving the integration step changes the trace by < 0.1% RMS") {
  const double lambda = 3.5e-12;
  const auto grid = DetectorGrid::symmetric(120e-6, 0.5e-6, 0.0);
  KirchhoffOptions coarse;
  KirchhoffOptions fine;
  fine.max_phase_step = coarse.max_phase_step / 2.0;
  const auto g = bare_grating(105e-9, 40e-9);
  const double k = 2.0 * oracle::pi / lambda;
  const auto a = kirchhoff_pattern(g, k, L2, 20, grid, coarse);
  const auto b = kirchhoff_pattern(g, k, L2, 20, grid, fine);
  CHECK(normalized_rms(a.intensities, b.intensities) < 1e-3);
}

TEST_CASE("envelope zero suppresses order d / s_eff") {
  const double lambda = 3.5e-12;
  const double d = 100e-9;
  const auto grid = DetectorGrid::symmetric(110e-6, 0.25e-6, 0.0);
  const auto t = kirchhoff_pattern(bare_grating(d, 25e-9), 2.0 * oracle::pi / lambda, L2, 10, grid);
  const auto orders = order_population(t, d, lambda, L2, 5);
  CHECK(orders[4].height < 0.01);
  CHECK(orders[3].height > 0.01);
}

TEST_CASE("resolution guard") {
  const double lambda = 3.5e-12;
  const double fringe = lambda * L2 / 105e-9;
  const auto g = bare_grating(105e-9, 15e-9);
  const double k = 2.0 * oracle::pi / lambda;
  CHECK_THROWS_AS(kirchhoff_pattern(g, k, L2, 5, DetectorGrid::symmetric(50e-6, fringe / 3.0)), ResolutionError);
  CHECK_NOTHROW(kirchhoff_pattern(g, k, L2, 5, DetectorGrid::symmetric(50e-6, fringe / 5.0)));
  CHECK_THROWS_AS(kirchhoff_pattern(g, k, L2, 0, DetectorGrid::symmetric(50e-6, 1e-6)), DomainError);
  CHECK_THROWS_AS((DetectorGrid{1.0, 0.0, 1e-6}.validate()), DomainError);
}

TEST_CASE("far-field orders") {
  const double lambda = de_broglie_wavelength(pch2_rounded, 220.0);
  const auto ff = far_field_orders(lambda, 105e-9, L2, 3);
  REQUIRE(ff.propagating.size() == 4);
  CHECK(ff.propagating[0].position == 0.0);
  CHECK(ff.propagating[1].position == doctest::Approx(19.8e-6).epsilon(0.005));
  CHECK(ff.propagating[2].position == doctest::Approx(oracle::order_position(2, lambda, 105e-9, L2)));
  CHECK(ff.evanescent.empty());

  const auto cut = far_field_orders(40e-9, 105e-9, L2, 5);
  CHECK(cut.propagating.size() == 3);
  CHECK(cut.evanescent == std::vector<int>{3, 4, 5});
}

TEST_CASE("SiNx grating at 220 m/s populates orders out to n = 9") {
  const auto& g = presets::grating("sinx");
  const double lambda = de_broglie_wavelength(pch2_rounded, 220.0);
  const auto coh = coherence(presets::source(), presets::beamline(), lambda, g.period());
  const auto grid = DetectorGrid::symmetric(12.5 * lambda * L2 / g.period(), 0.5e-6);
  const auto raw = kirchhoff_pattern(g, 2.0 * oracle::pi / lambda, L2, coh.n_coherent_slits, grid);
  const auto t = detector_convolve(raw, 3.5e-6);
  const auto orders = order_population(t, g.period(), lambda, L2, 10);
  const double first = orders[1].height;
  CHECK(orders[7].height < 0.01 * first);
  CHECK(orders[9].present);
  CHECK(orders[9].height > 0.005 * first);
  // Order ratios follow sinc^2 where the envelope is not near a zero.
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const double expected = oracle::sinc2_order(n, 15e-9, 105e-9) / oracle::sinc2_order(1, 15e-9, 105e-9);
    CHECK(orders[static_cast<std::size_t>(n)].height / first == doctest::Approx(expected).epsilon(0.15));
  }
}

TEST_CASE("detector convolution") {
  Trace delta;
  const auto grid = DetectorGrid::symmetric(40e-6, 0.25e-6, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    delta.positions.push_back(grid.position(i));
    delta.intensities.push_back(i == grid.size() / 2 ? 1.0 : 0.0);
  }
  const auto blurred = detector_convolve(delta, 3.5e-6);
  double m2 = 0.0;
  for (std::size_t i = 0; i < blurred.size(); ++i) m2 += blurred.intensities[i] * blurred.positions[i] * blurred.positions[i];
  CHECK(std::sqrt(m2 / (blurred.integral() / blurred.pitch())) == doctest::Approx(3.5e-6).epsilon(1e-3));
  CHECK(blurred.integral() == doctest::Approx(delta.integral()).epsilon(1e-6));

  const auto same = detector_convolve(delta, 0.0);
  CHECK(same.intensities == delta.intensities);
  CHECK_THROWS_AS(detector_convolve(delta, -1e-6), DomainError);
}

TEST_CASE("convolution preserves the integral of random interior signals") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Trace t;
    for (int i = 0; i < 400; ++i) {
      t.positions.push_back(i * 0.5e-6);
      // Zero margin wider than the 5 sigma kernel.
      t.intensities.push_back(i < 40 || i >= 360 ? 0.0 : u(rng));
    }
    CHECK(detector_convolve(t, 3.5e-6).integral() == doctest::Approx(t.integral()).epsilon(1e-6));
  }
}

TEST_CASE("velocity band sampling") {
  CHECK(VelocityBand{}.velocities() == std::vector<double>{210, 215, 220, 225, 230});
  CHECK(VelocityBand{220, 0, 5}.velocities() == std::vector<double>{220});
  CHECK_THROWS_AS((VelocityBand{220, 230, 5}.velocities()), DomainError);
  CHECK_THROWS_AS((VelocityBand{220, 10, 0}.velocities()), DomainError);
}

TEST_CASE("simulated traces are normalized and deterministic") {
  TraceModel m{pch2_rounded, presets::grating("slg"), presets::source(), presets::beamline(),
               VelocityBand{220, 10, 3}, DetectorGrid::symmetric(80e-6, 0.5e-6)};
  const auto a = simulate_trace(m);
  const auto b = simulate_trace(m);
  CHECK(a.max() == doctest::Approx(1.0));
  CHECK(a.normalization == Normalization::max_one);
  CHECK(a.intensities == b.intensities);

  m.kirchhoff.window = CoherenceWindow::gaussian;
  const auto c = simulate_trace(m);
  CHECK(normalized_rms(a.intensities, c.intensities) > 1e-4);
}
