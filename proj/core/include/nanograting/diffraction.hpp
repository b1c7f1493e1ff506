#pragma once

// Monochromatic far-field diffraction behind N coherently illuminated slits.
//
// The pattern is the squared modulus of the Fresnel-Kirchhoff sum
//
//   A(x') = sum_n  integral_{slit n} exp(i k [sqrt(L2^2 + (x - x')^2) - L2]) dx
//
// evaluated with a fixed-step midpoint rule. The constant phase k*L2
// (~1e12 rad) is dropped; the remaining path difference is computed as
// u^2 / (L2 + sqrt(L2^2 + u^2)) so no large numbers are subtracted.

#include <cstddef>
#include <vector>

#include "nanograting/domain.hpp"

namespace nanograting {

struct DetectorGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  double pitch = 0.0;
  double psf_sigma = 3.5e-6;

  /// Grid symmetric about 0 with x = 0 on a pixel centre.
  static DetectorGrid symmetric(double half_width, double pitch, double psf_sigma = 3.5e-6);

  std::size_t size() const;
  double position(std::size_t i) const { return x_min + static_cast<double>(i) * pitch; }
  void validate() const;
};

enum class Normalization { raw, max_one, unit_area };

struct Trace {
  std::vector<double> positions;
  std::vector<double> intensities;
  Normalization normalization = Normalization::raw;

  std::size_t size() const { return positions.size(); }
  double pitch() const;
  double integral() const;
  double max() const;
};

Trace normalized_to_max(Trace t);
Trace normalized_to_unit_area(Trace t);

struct CoherenceResult {
  double coherence_angle;             // rad
  double coherence_width_at_grating;  // m
  int n_coherent_slits;               // >= 1
};

CoherenceResult coherence(const SourceModel& source, const BeamlineGeometry& geometry,
                          double wavelength, double period, double prefactor = 1.5);

double wave_number(const Molecule& molecule, double velocity);

enum class CoherenceWindow { uniform, gaussian };

struct KirchhoffOptions {
  // Integrand phase advance per midpoint step at the steepest detector angle.
  double max_phase_step = 0.2;
  CoherenceWindow window = CoherenceWindow::uniform;
  // Gaussian taper sigma as a fraction of the illuminated half-width.
  double gaussian_width_fraction = 0.5;
  // Minimum detector samples per fringe period lambda*L2/d.
  double min_samples_per_fringe = 4.0;
};

/// Raw |A(x')|^2 on the grid. Slit centres sit at (n - (N-1)/2) d, each of
/// width s_eff. Throws ResolutionError if the grid cannot resolve the fringes.
Trace kirchhoff_pattern(const Grating& grating, double wave_number, double L2, int n_slits,
                        const DetectorGrid& grid, const KirchhoffOptions& options = {});

struct DiffractionOrder {
  int n;
  double angle;     // rad
  double position;  // m on the detector
};

struct FarFieldOrders {
  std::vector<DiffractionOrder> propagating;  // n = 0 .. n_max with n*lambda < d
  std::vector<int> evanescent;                // orders with n*lambda >= d
};

FarFieldOrders far_field_orders(double wavelength, double period, double L2, int n_max);

/// Convolution with a unit-area Gaussian truncated at +-5 sigma.
/// sigma = 0 is the identity; the grid edges are zero-padded.
Trace detector_convolve(const Trace& trace, double sigma);

// A velocity band sampled uniformly in v and averaged incoherently.
struct VelocityBand {
  double center = 220.0;
  double half_width = 10.0;
  int samples = 5;

  std::vector<double> velocities() const;
};

// Everything needed to simulate one detector-convolved band trace.
struct TraceModel {
  Molecule molecule;
  Grating grating;
  SourceModel source;
  BeamlineGeometry geometry;
  VelocityBand band;
  DetectorGrid grid;
  double coherence_prefactor = 1.5;
  KirchhoffOptions kirchhoff;
};

/// Band-averaged Kirchhoff pattern (each velocity sample with its own
/// coherent slit count), blurred with grid.psf_sigma, normalized to max = 1.
Trace simulate_trace(const TraceModel& model);
Trace simulate_trace(const TraceModel& model, double effective_slit_width);

}  // namespace nanograting
