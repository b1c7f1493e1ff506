#include "nanograting/vdwfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nanograting/errors.hpp"

namespace nanograting {
namespace {

double refine(const std::vector<double>& t, std::size_t i) {
  if (i == 0 || i + 1 >= t.size()) return 0.0;
  const double denom = t[i - 1] - 2.0 * t[i] + t[i + 1];
  if (denom >= 0.0) return 0.0;
  return 0.5 * (t[i - 1] - t[i + 1]) / denom;
}

double interpolate(const Trace& t, double x, bool& inside) {
  const double x0 = t.positions.front();
  const double pitch = t.pitch();
  const double r = (x - x0) / pitch;
  const double last = static_cast<double>(t.size() - 1);
  if (r < -1e-9 || r > last + 1e-9) {
    inside = false;
    return 0.0;
  }
  inside = true;
  const double rc = std::clamp(r, 0.0, last);
  const auto i = std::min(static_cast<std::size_t>(rc), t.size() - 2);
  const double f = rc - static_cast<double>(i);
  return (1.0 - f) * t.intensities[i] + f * t.intensities[i + 1];
}

bool is_flat(const Trace& t) {
  if (t.size() < 3) return true;
  const auto [lo, hi] = std::minmax_element(t.intensities.begin(), t.intensities.end());
  return !(*hi > 0.0) || (*hi - *lo) <= 1e-9 * *hi;
}

}  // namespace

double zeroth_order_position(const Trace& trace, double window) {
  if (trace.size() < 3) throw FitError("trace too short to locate the zeroth order");
  double w = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    w += trace.intensities[i];
    m += trace.intensities[i] * trace.positions[i];
  }
  if (!(w > 0.0)) throw FitError("trace carries no intensity");
  const double centroid = m / w;
  std::size_t best = trace.size();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (std::abs(trace.positions[i] - centroid) > window) continue;
    if (best == trace.size() || trace.intensities[i] > trace.intensities[best]) best = i;
  }
  if (best == trace.size()) throw FitError("no samples near the trace centroid");
  return trace.positions[best] + refine(trace.intensities, best) * trace.pitch();
}

double trace_residual(const Trace& measured, const Trace& simulated, double registration_window) {
  const double m_max = measured.max();
  const double s_max = simulated.max();
  if (!(m_max > 0.0) || !(s_max > 0.0)) throw FitError("cannot compare traces without signal");
  // Registration corrects small offsets only; the grids themselves must overlap.
  const std::size_t needed = std::max<std::size_t>(3, measured.size() / 2);
  std::size_t overlap = 0;
  for (double x : measured.positions) {
    if (x >= simulated.positions.front() && x <= simulated.positions.back()) ++overlap;
  }
  if (overlap < needed) throw FitError("measured and simulated grids do not overlap");
  const double shift = zeroth_order_position(measured, registration_window) -
                       zeroth_order_position(simulated, registration_window);
  double ss = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    bool inside = false;
    const double sim = interpolate(simulated, measured.positions[i] - shift, inside);
    if (!inside) continue;
    const double diff = measured.intensities[i] / m_max - sim / s_max;
    ss += diff * diff;
    ++count;
  }
  if (count < needed) {
    throw FitError("registered traces overlap on too few samples");
  }
  return std::sqrt(ss / static_cast<double>(count));
}

SlitFitResult fit_effective_slit(const Trace& measured, const TraceModel& model,
                                 const SlitFitOptions& options) {
  if (is_flat(measured)) throw FitError("measured trace is flat; nothing to fit");
  const double s = model.grating.slit_width();
  if (!(options.lower_bound > 0.0) || options.lower_bound > s) {
    throw DomainError("fit bounds must satisfy 0 < lower <= s");
  }
  if (!(options.coarse_step > 0.0) || !(options.tolerance > 0.0)) {
    throw DomainError("fit step and tolerance must be positive");
  }

  const double wavelength = de_broglie_wavelength(model.molecule, model.band.center);
  const double window = 0.5 * wavelength * model.geometry.L2() / model.grating.period();
  const Trace target = normalized_to_max(measured);

  SlitFitResult result;
  const auto objective = [&](double s_eff) {
    ++result.evaluations;
    return trace_residual(target, simulate_trace(model, s_eff), window);
  };

  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = options.lower_bound + i * options.coarse_step;
    if (v > s * (1.0 + 1e-12)) break;
    grid.push_back(std::min(v, s));
  }
  if (s - grid.back() > 1e-3 * options.coarse_step) grid.push_back(s);

  std::vector<double> residuals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) residuals[i] = objective(grid[i]);
  const auto b = static_cast<std::size_t>(
      std::min_element(residuals.begin(), residuals.end()) - residuals.begin());

  const std::size_t lo_i = b > 0 ? b - 1 : b;
  const std::size_t hi_i = b + 1 < grid.size() ? b + 1 : b;
  result.bracket_lower = grid[lo_i];
  result.bracket_upper = grid[hi_i];
  result.residual_at_lower = residuals[lo_i];
  result.residual_at_upper = residuals[hi_i];

  double best_x = grid[b];
  double best_f = residuals[b];

  if (hi_i > lo_i) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = grid[lo_i];
    double c = grid[hi_i];
    double x1 = c - inv_phi * (c - a);
    double x2 = a + inv_phi * (c - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (c - a > options.tolerance) {
      if (f1 < f2) {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - inv_phi * (c - a);
        f1 = objective(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (c - a);
        f2 = objective(x2);
      }
    }
    if (f1 < best_f) {
      best_f = f1;
      best_x = x1;
    }
    if (f2 < best_f) {
      best_f = f2;
      best_x = x2;
    }
  }

  result.effective_slit_width = best_x;
  result.residual = best_f;
  result.suppression_ratio = suppression_ratio(s, best_x);
  result.best_trace = simulate_trace(model, best_x);
  return result;
}

double suppression_ratio(double slit_width, double effective_slit_width) {
  if (!(effective_slit_width > 0.0) || effective_slit_width > slit_width) {
    throw DomainError("suppression ratio requires 0 < s_eff <= s");
  }
  return slit_width / effective_slit_width;
}

std::vector<OrderPeak> order_population(const Trace& trace, double period, double wavelength,
                                        double L2, int n_max) {
  if (trace.size() < 3) throw DomainError("trace too short for order analysis");
  const double fringe = wavelength * L2 / period;
  const double pitch = trace.pitch();
  const auto orders = far_field_orders(wavelength, period, L2, n_max);
  const auto& t = trace.intensities;

  std::vector<OrderPeak> out;
  for (const auto& o : orders.propagating) {
    OrderPeak p{o.n, o.position, o.position, 0.0, false};
    // Highest interior local maximum inside the window. On a sloping envelope
    // the plain window maximum sits on the window edge instead.
    std::size_t best = t.size();
    std::size_t peak = t.size();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::abs(trace.positions[i] - o.position) > 0.25 * fringe) continue;
      if (best == t.size() || t[i] > t[best]) best = i;
      const bool local = i > 0 && i + 1 < t.size() && t[i] > t[i - 1] && t[i] >= t[i + 1];
      if (local && (peak == t.size() || t[i] > t[peak])) peak = i;
    }
    if (peak < t.size()) {
      p.present = true;
      p.height = t[peak];
      p.position = trace.positions[peak] + refine(t, peak) * pitch;
    } else if (best < t.size()) {
      p.height = t[best];
    }
    out.push_back(p);
  }
  for (int n : orders.evanescent) {
    out.push_back({n, std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(), 0.0, false});
  }

  if (out.empty() || !out.front().present || !(out.front().height > 0.0)) {
    throw FitError("zeroth order not found in trace");
  }
  const double ref = out.front().height;
  for (auto& p : out) p.height /= ref;
  return out;
}

}  // namespace nanograting
