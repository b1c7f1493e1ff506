#pragma once

// Flat `section.key = value` run configuration for the nanograting CLI.
// Keys carry their unit as a suffix (grating.period_nm, geometry.L1_mm);
// everything is converted to SI on parse. Presets supply defaults and any
// explicit key overrides them regardless of order.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nanograting/diffraction.hpp"
#include "nanograting/gravity.hpp"
#include "nanograting/io.hpp"
#include "nanograting/limits.hpp"
#include "nanograting/vdwfit.hpp"

namespace nanograting::cli {

struct RunConfig {
  std::string molecule_preset = "pch2";
  std::optional<double> molecule_mass;

  std::string grating_preset = "sinx";
  std::optional<double> period;
  std::optional<double> slit_width;
  std::optional<double> effective_slit_width;
  std::optional<double> bar_length;
  std::optional<double> bar_width;
  std::optional<int> layers;
  std::optional<double> areal_density;

  std::optional<double> L1;
  std::optional<double> L;
  std::optional<double> gravity;
  double y0 = 0.0;
  double y1 = 0.0;

  std::optional<double> source_width;
  std::optional<double> most_probable_velocity;

  VelocityBand band;

  std::string distribution = "mb";
  int velocity_classes = 200;
  std::optional<double> velocity_min;
  std::optional<double> velocity_max;
  std::vector<VelocityClass> velocity_list;

  std::optional<double> x_min;
  std::optional<double> x_max;
  double pitch = 0.5e-6;
  double psf_sigma = 3.5e-6;
  int detector_orders = 10;

  std::optional<double> y_min;
  std::optional<double> y_max;
  double pitch_y = 2e-6;
  int image_orders = 5;
  double stretch = 1.0;

  double coherence_prefactor = 1.5;
  CoherenceWindow window = CoherenceWindow::uniform;
  double gaussian_fraction = 0.5;
  double phase_step = 0.2;

  SlitFitOptions fit;

  double noise = 0.0;
  std::uint64_t seed = 1;

  int stripes = 20;
  double stripe_min_signal = 0.05;

  std::optional<double> limits_sigma;
  std::optional<double> scroll_length;
  std::optional<double> scroll_diameter;
  double temperature = 300.0;
  double youngs_modulus = 1e12;
  std::optional<double> limits_slit;
  std::optional<double> limits_period;
  int n_max = 9;
  double lambda_ref = constants::rubidium_d2_wavelength;
  double molecule_count = 30000.0;
  double open_area = 49e-12;
  double footprint = 1.7e-18;

  // Resolved domain objects.
  Molecule molecule() const;
  Grating grating() const;
  BeamlineGeometry geometry() const;
  SourceModel source() const;
  KirchhoffOptions kirchhoff() const;
  DetectorGrid detector() const;
  TraceModel trace_model() const;
  VelocityDistribution velocity_distribution() const;
  ImageGrid image_grid() const;
  limits::LimitsInput limits_input() const;
  bool sigma_from_thermal_model() const;

  io::Metadata describe() const;
};

/// Applies one `key = value` setting; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses a whole config text (comments with '#', blank lines ignored).
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Selects a grating or molecule preset by name.
void apply_preset(RunConfig& config, std::string_view name);

std::vector<std::string> known_keys();

}  // namespace nanograting::cli
