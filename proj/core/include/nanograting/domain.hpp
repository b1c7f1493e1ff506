#pragma once

// Core physical value types shared by every module. All lengths in metres,
// masses in kilograms, velocities in m/s. Unit conversion happens only at
// the I/O boundary (config parsing, CSV headers).

#include <array>
#include <optional>
#include <string>

#include "nanograting/constants.hpp"

namespace nanograting {

struct PhysicalConstants {
  double h = constants::planck;
  double hbar = constants::hbar;
  double k_B = constants::boltzmann;
  // Photon wavelength that defines the hbar*k recoil unit.
  double lambda_ref = constants::rubidium_d2_wavelength;
};

class Molecule {
 public:
  /// `polarizability_A3` holds the three principal static polarizability
  /// volumes in cubic angstrom. It is carried along as metadata only.
  Molecule(std::string name, double mass_kg,
           std::optional<std::array<double, 3>> polarizability_A3 = std::nullopt);

  const std::string& name() const { return name_; }
  double mass() const { return mass_; }
  const std::optional<std::array<double, 3>>& polarizability() const { return polarizability_; }

 private:
  std::string name_;
  double mass_;
  std::optional<std::array<double, 3>> polarizability_;
};

struct GratingParams {
  std::string label;
  double period = 0.0;                // d
  double slit_width = 0.0;            // geometric s
  double effective_slit_width = 0.0;  // s_eff, vdW-reduced open width
  double bar_length = 0.0;
  double bar_width = 0.0;  // width of material in one bar
  int layers = 1;
  std::optional<double> areal_density;  // kg/m^2 per layer
  std::optional<double> quoted_opening_fraction;
  // Rolled-up bars (nanoscrolls) keep their unrolled ribbon width for the
  // mass budget, so bar_width ~ d - s does not apply to them.
  bool rolled = false;
  // Allowed |bar_width - (d - s)|; defaults to 10 % of the period when unset.
  std::optional<double> bar_width_tolerance;
};

class Grating {
 public:
  explicit Grating(GratingParams params);

  const GratingParams& params() const { return p_; }
  const std::string& label() const { return p_.label; }
  double period() const { return p_.period; }
  double slit_width() const { return p_.slit_width; }
  double effective_slit_width() const { return p_.effective_slit_width; }
  double bar_length() const { return p_.bar_length; }
  double bar_width() const { return p_.bar_width; }
  int layers() const { return p_.layers; }

  /// Same grating with a different effective slit width (validated).
  Grating with_effective_slit_width(double s_eff) const;

 private:
  GratingParams p_;
};

class BeamlineGeometry {
 public:
  /// `source_to_grating` = L1, `source_to_detector` = L. Vertical positions
  /// y0 (source) and y1 (grating) are in the detector frame, up-positive.
  BeamlineGeometry(double source_to_grating, double source_to_detector,
                   double gravity = constants::standard_gravity, double y0 = 0.0,
                   double y1 = 0.0);

  double L1() const { return L1_; }
  double L() const { return L_; }
  double L2() const { return L_ - L1_; }
  double g() const { return g_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }

 private:
  double L1_;
  double L_;
  double g_;
  double y0_;
  double y1_;
};

class SourceModel {
 public:
  SourceModel(double source_width, double most_probable_velocity);

  double source_width() const { return width_; }
  double most_probable_velocity() const { return v_p_; }

  /// v_p = sqrt(2 k_B T / m) for a thermal source of the given molecule.
  static double most_probable_from_temperature(double temperature, const Molecule& molecule);

 private:
  double width_;
  double v_p_;
};

double de_broglie_wavelength(const Molecule& molecule, double velocity);
double opening_fraction(const Grating& grating);
double bar_mass(const Grating& grating);

}  // namespace nanograting
