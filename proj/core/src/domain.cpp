#include "nanograting/domain.hpp"

#include <cmath>
#include <utility>

#include "nanograting/errors.hpp"

namespace nanograting {

Molecule::Molecule(std::string name, double mass_kg,
                   std::optional<std::array<double, 3>> polarizability_A3)
    : name_(std::move(name)), mass_(mass_kg), polarizability_(polarizability_A3) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) {
    throw DomainError("molecule mass must be positive");
  }
  if (polarizability_) {
    for (double a : *polarizability_) {
      if (!(a >= 0.0)) throw DomainError("polarizability values must be non-negative");
    }
  }
}

Grating::Grating(GratingParams params) : p_(std::move(params)) {
  const auto& p = p_;
  if (!(p.period > 0.0)) throw DomainError("grating period must be positive");
  if (!(p.slit_width > 0.0) || !(p.slit_width < p.period)) {
    throw DomainError("slit width must satisfy 0 < s < d");
  }
  if (!(p.effective_slit_width > 0.0) || p.effective_slit_width > p.slit_width) {
    throw DomainError("effective slit width must satisfy 0 < s_eff <= s");
  }
  if (p.bar_length < 0.0 || p.bar_width < 0.0) {
    throw DomainError("bar dimensions must be non-negative");
  }
  if (p.layers < 1) throw DomainError("layer count must be at least 1");
  if (p.areal_density && !(*p.areal_density >= 0.0)) {
    throw DomainError("areal density must be non-negative");
  }
  if (!p.rolled && p.bar_width > 0.0) {
    const double tol = p.bar_width_tolerance.value_or(0.1 * p.period);
    if (std::abs(p.bar_width - (p.period - p.slit_width)) > tol) {
      throw DomainError("bar width inconsistent with period minus slit width");
    }
  }
}

Grating Grating::with_effective_slit_width(double s_eff) const {
  GratingParams p = p_;
  p.effective_slit_width = s_eff;
  return Grating(std::move(p));
}

BeamlineGeometry::BeamlineGeometry(double source_to_grating, double source_to_detector,
                                   double gravity, double y0, double y1)
    : L1_(source_to_grating), L_(source_to_detector), g_(gravity), y0_(y0), y1_(y1) {
  if (!(L1_ > 0.0) || !(L1_ < L_)) throw DomainError("geometry requires 0 < L1 < L");
  if (!(g_ > 0.0)) throw DomainError("gravitational acceleration must be positive");
}

SourceModel::SourceModel(double source_width, double most_probable_velocity)
    : width_(source_width), v_p_(most_probable_velocity) {
  if (!(width_ > 0.0)) throw DomainError("source width must be positive");
  if (!(v_p_ > 0.0)) throw DomainError("most probable velocity must be positive");
}

double SourceModel::most_probable_from_temperature(double temperature, const Molecule& molecule) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return std::sqrt(2.0 * constants::boltzmann * temperature / molecule.mass());
}

double de_broglie_wavelength(const Molecule& molecule, double velocity) {
  if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
  return constants::planck / (molecule.mass() * velocity);
}

double opening_fraction(const Grating& grating) {
  return grating.slit_width() / grating.period();
}

double bar_mass(const Grating& grating) {
  const auto& density = grating.params().areal_density;
  if (!density) {
    throw ConfigError("grating '" + grating.label() + "' has no areal density configured");
  }
  return grating.layers() * *density * grating.bar_length() * grating.bar_width();
}

}  // namespace nanograting
