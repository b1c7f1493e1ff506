#pragma once

// Recoil budget for diffraction at a softly suspended grating bar.
// Coherence survives when the momentum uncertainty of the bar,
// hbar / (2 sigma), exceeds the momentum spread of the single-slit envelope,
// 0.89 h / s. Both conditions are the same as s > 3.56 pi sigma.

#include "nanograting/domain.hpp"

namespace nanograting::limits {

inline constexpr double envelope_fwhm_factor = 0.89;

double diffraction_momentum_spread(double slit_width);
double grating_momentum_uncertainty(double sigma);

/// RMS thermal displacement of a doubly clamped rod of circular section:
/// sqrt(k_B T L^3 / (192 Y I)), I = pi d^4 / 64. T = 0 gives 0.
double thermal_scroll_amplitude(double length, double diameter, double temperature,
                                double youngs_modulus = 1e12);

/// 3.56 pi sigma.
double min_coherent_slit(double sigma);

struct CoherenceCheck {
  bool coherent;
  double margin;  // (hbar / 2 sigma) / (0.89 h / s)
};
CoherenceCheck coherence_check(double sigma, double slit_width);

/// Momentum spread between the +n_max and -n_max orders in units of the
/// photon recoil h / lambda_ref: 2 n_max lambda_ref / d.
double momentum_transfer_hk(double period, int n_max,
                            double lambda_ref = constants::rubidium_d2_wavelength);

struct AdsorptionCoverage {
  double density_per_cm2;
  double surface_fraction;
};
AdsorptionCoverage adsorption_coverage(double molecule_count, double open_area,
                                       double footprint = 1.7e-18);

struct LimitsInput {
  double sigma;         // bar vibration amplitude, m
  double slit_width;    // m
  double period;        // m
  int n_max = 9;
  double lambda_ref = constants::rubidium_d2_wavelength;
};

struct LimitsReport {
  double dp_diff;
  double sigma_thermal;
  double dp_grating;
  double s_min;
  bool coherent;
  double margin;
  double momentum_transfer_hk;
};

LimitsReport compute_limits(const LimitsInput& input);

}  // namespace nanograting::limits
