#include "nanograting/limits.hpp"

#include <cmath>
#include <limits>

#include "nanograting/errors.hpp"

namespace nanograting::limits {

double diffraction_momentum_spread(double slit_width) {
  if (!(slit_width > 0.0)) throw DomainError("slit width must be positive");
  return envelope_fwhm_factor * constants::planck / slit_width;
}

double grating_momentum_uncertainty(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("position uncertainty must be positive");
  return constants::hbar / (2.0 * sigma);
}

double thermal_scroll_amplitude(double length, double diameter, double temperature,
                                double youngs_modulus) {
  if (!(length > 0.0) || !(diameter > 0.0) || !(youngs_modulus > 0.0)) {
    throw DomainError("length, diameter and Young's modulus must be positive");
  }
  if (!(temperature >= 0.0)) throw DomainError("temperature must be non-negative");
  const double area_moment = constants::pi * std::pow(diameter, 4) / 64.0;
  return std::sqrt(constants::boltzmann * temperature * std::pow(length, 3) /
                   (192.0 * youngs_modulus * area_moment));
}

double min_coherent_slit(double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be non-negative");
  return 3.56 * constants::pi * sigma;
}

CoherenceCheck coherence_check(double sigma, double slit_width) {
  const double margin = grating_momentum_uncertainty(sigma) / diffraction_momentum_spread(slit_width);
  return {margin > 1.0, margin};
}

double momentum_transfer_hk(double period, int n_max, double lambda_ref) {
  if (!(period > 0.0) || !(lambda_ref > 0.0) || n_max < 0) {
    throw DomainError("momentum transfer needs positive period, wavelength and n_max >= 0");
  }
  return 2.0 * n_max * lambda_ref / period;
}

AdsorptionCoverage adsorption_coverage(double molecule_count, double open_area, double footprint) {
  if (!(open_area > 0.0)) throw DomainError("open area must be positive");
  if (!(molecule_count >= 0.0) || !(footprint >= 0.0)) {
    throw DomainError("molecule count and footprint must be non-negative");
  }
  const double per_m2 = molecule_count / open_area;
  return {per_m2 * 1e-4, per_m2 * footprint};
}

LimitsReport compute_limits(const LimitsInput& input) {
  LimitsReport r{};
  r.dp_diff = diffraction_momentum_spread(input.slit_width);
  r.sigma_thermal = input.sigma;
  r.s_min = min_coherent_slit(input.sigma);
  // A perfectly still bar has unbounded momentum uncertainty.
  r.dp_grating = input.sigma == 0.0 ? std::numeric_limits<double>::infinity()
                                    : grating_momentum_uncertainty(input.sigma);
  r.coherent = r.dp_grating > r.dp_diff;
  r.margin = r.dp_grating / r.dp_diff;
  r.momentum_transfer_hk = momentum_transfer_hk(input.period, input.n_max, input.lambda_ref);
  return r;
}

}  // namespace nanograting::limits
