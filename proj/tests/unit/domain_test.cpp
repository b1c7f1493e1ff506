#include <cmath>
#include <random>

#include "doctest.h"
#include "nanograting/domain.hpp"
#include "nanograting/errors.hpp"
#include "nanograting/presets.hpp"
#include "oracles.hpp"

using namespace nanograting;

namespace {

Grating make_grating(double d, double s, double s_eff, double length, double width, int layers,
                     std::optional<double> density) {
  GratingParams p;
  p.label = "test";
  p.period = d;
  p.slit_width = s;
  p.effective_slit_width = s_eff;
  p.bar_length = length;
  p.bar_width = width;
  p.layers = layers;
  p.areal_density = density;
  p.bar_width_tolerance = 1.0;  // geometry-only tests
  return Grating(p);
}

}  // namespace

TEST_CASE("constants agree with the independently coded values") {
  CHECK(constants::planck == oracle::h);
  CHECK(constants::boltzmann == oracle::k_B);
  CHECK(constants::hbar == doctest::Approx(oracle::hbar).epsilon(1e-15));
  PhysicalConstants pc;
  CHECK(pc.hbar == doctest::Approx(pc.h / (2.0 * oracle::pi)).epsilon(1e-15));
  CHECK(pc.lambda_ref == 780.241e-9);
}

TEST_CASE("de Broglie wavelength") {
  const Molecule pch2("PcH2", 8.5e-25);
  CHECK(de_broglie_wavelength(pch2, 220.0) == doctest::Approx(3.54e-12).epsilon(2e-3));
  CHECK(de_broglie_wavelength(pch2, 260.0) == doctest::Approx(3.00e-12).epsilon(2e-3));
  CHECK(de_broglie_wavelength(pch2, 440.0) == doctest::Approx(de_broglie_wavelength(pch2, 220.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(de_broglie_wavelength(pch2, 0.0), DomainError);
  CHECK_THROWS_AS(de_broglie_wavelength(pch2, -5.0), DomainError);
}

TEST_CASE("lambda * m * v = h over random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_mass(-27.0, -20.0);
  std::uniform_real_distribution<double> vel(1.0, 5000.0);
  for (int i = 0; i < 2000; ++i) {
    const double m = std::pow(10.0, log_mass(rng));
    const double v = vel(rng);
    const Molecule mol("x", m);
    CHECK(de_broglie_wavelength(mol, v) * m * v == doctest::Approx(oracle::h).epsilon(1e-14));
  }
}

TEST_CASE("molecule validation") {
  CHECK_THROWS_AS(Molecule("bad", 0.0), DomainError);
  CHECK_THROWS_AS(Molecule("bad", 1e-25, std::array<double, 3>{1.0, -1.0, 2.0}), DomainError);
  const auto& pch2 = presets::molecule("pch2");
  CHECK(pch2.mass() == doctest::Approx(514.0 * oracle::amu));
  CHECK(pch2.mass() == doctest::Approx(8.5e-25).epsilon(0.01));
  REQUIRE(pch2.polarizability().has_value());
}

TEST_CASE("opening fraction") {
  CHECK(opening_fraction(make_grating(101e-9, 59e-9, 35e-9, 1e-7, 4e-8, 1, {})) == doctest::Approx(0.58).epsilon(0.01));
  CHECK(opening_fraction(make_grating(87e-9, 23e-9, 20e-9, 1e-7, 6.4e-8, 1, {})) == doctest::Approx(0.26).epsilon(0.02));
  CHECK(opening_fraction(make_grating(100e-9, 50e-9, 20e-9, 1e-7, 5e-8, 1, {})) == doctest::Approx(0.5));
}

TEST_CASE("opening fraction lies in (0, 1) for random valid gratings") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double d = 50e-9 + 100e-9 * u(rng);
    const double s = d * u(rng);
    const double f = opening_fraction(make_grating(d, s, s * u(rng), 1e-7, d - s, 1, {}));
    CHECK(f > 0.0);
    CHECK(f < 1.0);
  }
}

TEST_CASE("bar mass") {
  const double rho = presets::graphene_areal_density;
  CHECK(bar_mass(make_grating(101e-9, 59e-9, 35e-9, 247e-9, 41e-9, 1, rho)) == doctest::Approx(7.7e-21).epsilon(0.05));
  CHECK(bar_mass(make_grating(113e-9, 62e-9, 28e-9, 827e-9, 49e-9, 2, rho)) == doctest::Approx(6.2e-20).epsilon(0.05));
  CHECK(bar_mass(make_grating(113e-9, 62e-9, 28e-9, 827e-9, 0.0, 2, rho)) == 0.0);
  CHECK_THROWS_AS(bar_mass(make_grating(113e-9, 62e-9, 28e-9, 827e-9, 49e-9, 2, std::nullopt)), ConfigError);

  const auto full = make_grating(113e-9, 62e-9, 28e-9, 800e-9, 49e-9, 2, rho);
  const auto half = make_grating(113e-9, 62e-9, 28e-9, 400e-9, 49e-9, 2, rho);
  CHECK(bar_mass(half) == doctest::Approx(bar_mass(full) / 2.0).epsilon(1e-15));
}

TEST_CASE("preset bar masses reproduce the published table") {
  for (const auto& row : oracle::table_one) {
    CAPTURE(row.name);
    const std::string name = row.name;
    const double m = name == "pch2" ? presets::molecule(name).mass() : bar_mass(presets::grating(name));
    CHECK(m == doctest::Approx(row.mass).epsilon(0.05));
  }
}

TEST_CASE("grating invariants") {
  CHECK_THROWS_AS(make_grating(100e-9, 100e-9, 20e-9, 1e-7, 0.0, 1, {}), DomainError);
  CHECK_THROWS_AS(make_grating(100e-9, 50e-9, 60e-9, 1e-7, 5e-8, 1, {}), DomainError);
  CHECK_THROWS_AS(make_grating(100e-9, 50e-9, 0.0, 1e-7, 5e-8, 1, {}), DomainError);
  CHECK_THROWS_AS(make_grating(100e-9, 50e-9, 20e-9, 1e-7, 5e-8, 0, {}), DomainError);

  GratingParams p = presets::grating("slg").params();
  p.bar_width = 80e-9;  // d - s = 42 nm
  CHECK_THROWS_AS(Grating{p}, DomainError);

  const auto g = presets::grating("sinx").with_effective_slit_width(30e-9);
  CHECK(g.effective_slit_width() == 30e-9);
  CHECK_THROWS_AS(presets::grating("sinx").with_effective_slit_width(60e-9), DomainError);
}

TEST_CASE("presets") {
  CHECK(presets::grating_names().size() == 5);
  for (auto name : presets::grating_names()) {
    const auto& g = presets::grating(name);
    CAPTURE(name);
    CHECK(g.effective_slit_width() <= g.slit_width());
    CHECK(g.slit_width() < g.period());
  }
  CHECK(presets::grating("sinx").period() == doctest::Approx(105e-9));
  CHECK(presets::grating("sinx").effective_slit_width() == doctest::Approx(15e-9));
  CHECK(presets::grating("scroll").period() == doctest::Approx(88e-9));
  CHECK(presets::grating("scroll").effective_slit_width() == doctest::Approx(49e-9));
  CHECK(presets::grating("biphenyl").bar_length() == doctest::Approx(977e-9));
  CHECK(presets::grating("sinx").params().quoted_opening_fraction.value() == 0.48);
  CHECK_THROWS_AS(presets::grating("nosuch"), ConfigError);
  CHECK_THROWS_AS(presets::molecule("nosuch"), ConfigError);

  const auto geom = presets::beamline();
  CHECK(geom.L2() == doctest::Approx(0.586));
}

TEST_CASE("geometry and source validation") {
  CHECK_THROWS_AS(BeamlineGeometry(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(BeamlineGeometry(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(BeamlineGeometry(1.0, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(SourceModel(0.0, 220.0), DomainError);
  CHECK_THROWS_AS(SourceModel(1e-6, 0.0), DomainError);
  const Molecule m("x", 8.5e-25);
  const double vp = SourceModel::most_probable_from_temperature(300.0, m);
  CHECK(vp == doctest::Approx(std::sqrt(2.0 * oracle::k_B * 300.0 / 8.5e-25)));
}
