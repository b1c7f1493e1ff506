#pragma once

// Vertical velocity selection by free fall between source, grating and
// detector, and the 2D interferograms it produces.
//
// With the source at (0, y0) and the grating at (L1, y1), a molecule of
// horizontal speed v follows the unique parabola through both points and
// reaches the detector plane z = L at
//
//   y2 = y0 + (y1 - y0) L / L1 - g L (L - L1) / (2 v^2).
//
// Inverting for v gives
//
//   v = sqrt( g (L L1 - L^2) / 2  /  (y2 - y0 - (y1 - y0) L / L1) ).

#include <cstddef>
#include <vector>

#include "nanograting/diffraction.hpp"
#include "nanograting/domain.hpp"
#include "nanograting/interferogram.hpp"

namespace nanograting {

double fall_position(double velocity, const BeamlineGeometry& geometry);
double fit_velocity(double y2, double y0, double y1, const BeamlineGeometry& geometry);

enum class VelocityDistributionKind { maxwell_boltzmann_beam, uniform_band, discrete };

struct VelocityClass {
  double velocity;
  double weight;
};

class VelocityDistribution {
 public:
  /// Flux-weighted beam w(v) ~ v^3 exp(-v^2 / v_p^2), discretised into
  /// `classes` uniform bins over [lo_factor v_p, hi_factor v_p].
  static VelocityDistribution maxwell_boltzmann_beam(double most_probable, int classes = 200,
                                                     double lo_factor = 1.0 / 3.0,
                                                     double hi_factor = 3.0);
  static VelocityDistribution uniform_band(double v_min, double v_max, int classes);
  static VelocityDistribution discrete(std::vector<VelocityClass> classes);

  VelocityDistributionKind kind() const { return kind_; }
  /// Unnormalised density; for discrete distributions the weight of the exact class.
  double weight(double velocity) const;
  /// Class list with weights summing to 1.
  const std::vector<VelocityClass>& classes() const { return classes_; }

 private:
  VelocityDistribution(VelocityDistributionKind kind, double a, double b,
                       std::vector<VelocityClass> classes);

  VelocityDistributionKind kind_;
  double a_;
  double b_;
  std::vector<VelocityClass> classes_;
};

struct ImageGrid {
  DetectorGrid x;  // x.psf_sigma is applied along both axes
  double y_min = 0.0;
  double y_max = 0.0;
  double pitch_y = 2e-6;

  std::size_t ny() const;
};

struct SynthesisOptions {
  double coherence_prefactor = 1.5;
  KirchhoffOptions kirchhoff;
};

struct SynthesisResult {
  Interferogram image;
  int clipped_classes = 0;
  double clipped_weight = 0.0;
};

/// Incoherent sum over velocity classes: each class contributes its unit-area
/// Kirchhoff pattern times its weight, split linearly between the two rows
/// bracketing its arrival height, followed by a 2D Gaussian detector blur.
SynthesisResult synthesize_image(const VelocityDistribution& distribution, const Grating& grating,
                                 const Molecule& molecule, const SourceModel& source,
                                 const BeamlineGeometry& geometry, const ImageGrid& grid,
                                 const SynthesisOptions& options = {});

struct StripeOptions {
  int stripes = 20;
  // Stripes whose peak column sum is below this fraction of the strongest stripe are skipped.
  double min_relative_signal = 0.05;
  // First-order candidates must lie this far from the zeroth order.
  double min_order_separation = 6e-6;
  // ... and exceed this fraction of the stripe's zeroth-order height.
  double min_peak_fraction = 1e-3;
  // Fewer usable stripes than this leaves the global fit under-determined.
  int min_stripes_for_fit = 3;
  // ... or if their velocities span less than this fraction of the median
  // (a single velocity class smeared over several stripes by the blur).
  double min_velocity_span = 0.02;
};

struct StripeSample {
  int stripe;
  double y;                   // intensity-weighted row height
  double first_order_offset;  // m from the zeroth order
  double velocity;            // from n lambda = d sin(theta) and lambda = h / (m v)
  double fitted_velocity;     // from the global free-fall fit
  double residual;            // velocity - fitted_velocity
};

struct StripeProfile {
  std::vector<StripeSample> samples;  // ordered top (fast) to bottom (slow)
  std::vector<int> skipped;           // stripes with no detectable first order
  bool underdetermined = false;
  // Height of the straight source-grating line at the detector,
  // y0 + (y1 - y0) L / L1, as fitted from the stripes.
  double ballistic_intercept = 0.0;
  double rms_residual = 0.0;
};

StripeProfile stripe_velocity_profile(const Interferogram& image, const BeamlineGeometry& geometry,
                                      double period, const Molecule& molecule,
                                      const StripeOptions& options = {});

}  // namespace nanograting
