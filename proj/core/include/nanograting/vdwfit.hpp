#pragma once

// Effective-slit-width inversion. Van der Waals attraction to the bar walls
// is folded into a binary mask whose open width s_eff is smaller than the
// geometric slit; s_eff is found by matching simulated band traces to a
// measured one.

#include <vector>

#include "nanograting/diffraction.hpp"

namespace nanograting {

struct SlitFitOptions {
  double lower_bound = 1e-9;
  double coarse_step = 1e-9;
  double tolerance = 0.1e-9;
};

struct SlitFitResult {
  double effective_slit_width = 0.0;
  double residual = 0.0;           // RMS on max-normalized traces
  double suppression_ratio = 1.0;  // s / s_eff
  int evaluations = 0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
  double residual_at_lower = 0.0;
  double residual_at_upper = 0.0;
  Trace best_trace;  // simulated trace at the optimum, on the model grid
};

/// Position of the zeroth-order maximum: the highest sample within `window`
/// of the intensity centroid, refined parabolically.
double zeroth_order_position(const Trace& trace, double window);

/// RMS difference of the max-normalized traces after shifting `simulated`
/// so its zeroth order lands on the measured one. Evaluated on the measured
/// grid wherever the simulated trace covers it.
double trace_residual(const Trace& measured, const Trace& simulated, double registration_window);

/// Coarse scan in `coarse_step` increments over [lower_bound, s], then
/// golden-section refinement inside the best coarse bracket.
SlitFitResult fit_effective_slit(const Trace& measured, const TraceModel& model,
                                 const SlitFitOptions& options = {});

double suppression_ratio(double slit_width, double effective_slit_width);

struct OrderPeak {
  int n;
  double expected_position;  // L2 tan(asin(n lambda / d))
  double position;           // sub-pixel local maximum
  double height;             // relative to order 0
  bool present;              // local maximum found within a quarter fringe
};

std::vector<OrderPeak> order_population(const Trace& trace, double period, double wavelength,
                                        double L2, int n_max);

}  // namespace nanograting
