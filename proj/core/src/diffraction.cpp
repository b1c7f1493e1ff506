#include "nanograting/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nanograting/errors.hpp"

namespace nanograting {

DetectorGrid DetectorGrid::symmetric(double half_width, double pitch, double psf_sigma) {
  if (!(pitch > 0.0) || !(half_width > 0.0)) {
    throw DomainError("detector grid needs positive half-width and pitch");
  }
  const double half_count = std::floor(half_width / pitch + 1e-9);
  return DetectorGrid{-half_count * pitch, half_count * pitch, pitch, psf_sigma};
}

std::size_t DetectorGrid::size() const {
  return static_cast<std::size_t>(std::floor((x_max - x_min) / pitch + 1e-9)) + 1;
}

void DetectorGrid::validate() const {
  if (!(x_min < x_max)) throw DomainError("detector grid requires x_min < x_max");
  if (!(pitch > 0.0)) throw DomainError("detector pixel pitch must be positive");
  if (!(psf_sigma >= 0.0)) throw DomainError("detector psf sigma must be non-negative");
}

double Trace::pitch() const {
  if (positions.size() < 2) return 0.0;
  return (positions.back() - positions.front()) / static_cast<double>(positions.size() - 1);
}

double Trace::integral() const {
  return std::accumulate(intensities.begin(), intensities.end(), 0.0) * pitch();
}

double Trace::max() const {
  if (intensities.empty()) return 0.0;
  return *std::max_element(intensities.begin(), intensities.end());
}

Trace normalized_to_max(Trace t) {
  const double m = t.max();
  if (m > 0.0) {
    for (double& v : t.intensities) v /= m;
  }
  t.normalization = Normalization::max_one;
  return t;
}

Trace normalized_to_unit_area(Trace t) {
  const double a = t.integral();
  if (a > 0.0) {
    for (double& v : t.intensities) v /= a;
  }
  t.normalization = Normalization::unit_area;
  return t;
}

double wave_number(const Molecule& molecule, double velocity) {
  return 2.0 * constants::pi / de_broglie_wavelength(molecule, velocity);
}

CoherenceResult coherence(const SourceModel& source, const BeamlineGeometry& geometry,
                          double wavelength, double period, double prefactor) {
  if (!(wavelength >= 0.0) || !(period > 0.0) || !(prefactor > 0.0)) {
    throw DomainError("coherence needs non-negative wavelength, positive period and prefactor");
  }
  CoherenceResult r{};
  r.coherence_angle = prefactor * wavelength / source.source_width();
  r.coherence_width_at_grating = r.coherence_angle * geometry.L1();
  const double slits = std::floor(r.coherence_width_at_grating / period);
  r.n_coherent_slits = slits < 1.0 ? 1 : static_cast<int>(slits);
  return r;
}

Trace kirchhoff_pattern(const Grating& grating, double k, double L2, int n_slits,
                        const DetectorGrid& grid, const KirchhoffOptions& options) {
  grid.validate();
  if (!(k > 0.0)) throw DomainError("wave number must be positive");
  if (!(L2 > 0.0)) throw DomainError("grating-detector distance must be positive");
  if (n_slits < 1) throw DomainError("at least one coherent slit is required");
  if (!(options.max_phase_step > 0.0)) throw DomainError("phase step must be positive");

  const double d = grating.period();
  const double s = grating.effective_slit_width();
  const double wavelength = 2.0 * constants::pi / k;
  const double fringe = wavelength * L2 / d;
  if (grid.pitch > fringe / options.min_samples_per_fringe) {
    throw ResolutionError("detector pitch too coarse for fringe period lambda*L2/d");
  }

  const double offset = 0.5 * static_cast<double>(n_slits - 1);
  const double half_aperture = offset * d + 0.5 * s;
  const double u_max = std::max(std::abs(grid.x_min), std::abs(grid.x_max)) + half_aperture;
  const double sin_max = u_max / std::hypot(L2, u_max);
  const double target_step = options.max_phase_step / (k * sin_max);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(s / target_step)));
  const double dx = s / static_cast<double>(steps);

  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(steps * static_cast<std::size_t>(n_slits));
  weights.reserve(nodes.capacity());
  const double taper = options.gaussian_width_fraction * (offset * d + 0.5 * d);
  for (int n = 0; n < n_slits; ++n) {
    const double center = (static_cast<double>(n) - offset) * d;
    double w = 1.0;
    if (options.window == CoherenceWindow::gaussian && taper > 0.0) {
      w = std::exp(-0.5 * (center / taper) * (center / taper));
    }
    for (std::size_t j = 0; j < steps; ++j) {
      nodes.push_back(center - 0.5 * s + (static_cast<double>(j) + 0.5) * dx);
      weights.push_back(w);
    }
  }

  const std::size_t n_pix = grid.size();
  Trace out;
  out.positions.resize(n_pix);
  out.intensities.resize(n_pix);
  const double L2sq = L2 * L2;
  for (std::size_t i = 0; i < n_pix; ++i) {
    const double xp = grid.position(i);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double u = nodes[j] - xp;
      const double u2 = u * u;
      const double phase = k * (u2 / (L2 + std::sqrt(L2sq + u2)));
      re += weights[j] * std::cos(phase);
      im += weights[j] * std::sin(phase);
    }
    out.positions[i] = xp;
    out.intensities[i] = (re * re + im * im) * dx * dx;
  }
  return out;
}

FarFieldOrders far_field_orders(double wavelength, double period, double L2, int n_max) {
  if (!(wavelength > 0.0) || !(period > 0.0) || !(L2 > 0.0)) {
    throw DomainError("far-field orders need positive wavelength, period and distance");
  }
  FarFieldOrders out;
  for (int n = 0; n <= n_max; ++n) {
    const double sin_theta = n * wavelength / period;
    if (sin_theta >= 1.0) {
      out.evanescent.push_back(n);
      continue;
    }
    const double theta = std::asin(sin_theta);
    out.propagating.push_back({n, theta, L2 * std::tan(theta)});
  }
  return out;
}

Trace detector_convolve(const Trace& trace, double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("detector sigma must be non-negative");
  if (sigma == 0.0 || trace.size() < 2) return trace;

  const double pitch = trace.pitch();
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(5.0 * sigma / pitch));
  if (half == 0) return trace;

  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  for (std::ptrdiff_t j = -half; j <= half; ++j) {
    const double x = static_cast<double>(j) * pitch / sigma;
    kernel[static_cast<std::size_t>(j + half)] = std::exp(-0.5 * x * x);
  }
  const double norm = std::accumulate(kernel.begin(), kernel.end(), 0.0);
  for (double& w : kernel) w /= norm;

  const auto n = static_cast<std::ptrdiff_t>(trace.size());
  Trace out;
  out.positions = trace.positions;
  out.intensities.assign(trace.size(), 0.0);
  out.normalization =
      trace.normalization == Normalization::unit_area ? Normalization::unit_area : Normalization::raw;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      acc += kernel[static_cast<std::size_t>(i - j + half)] * trace.intensities[static_cast<std::size_t>(j)];
    }
    out.intensities[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> VelocityBand::velocities() const {
  if (!(center > 0.0)) throw DomainError("band centre velocity must be positive");
  if (!(half_width >= 0.0) || half_width >= center) {
    throw DomainError("band half-width must satisfy 0 <= half_width < centre");
  }
  if (samples < 1) throw DomainError("band needs at least one sample");
  if (samples == 1 || half_width == 0.0) return {center};
  std::vector<double> v(static_cast<std::size_t>(samples));
  const double step = 2.0 * half_width / static_cast<double>(samples - 1);
  for (int i = 0; i < samples; ++i) {
    v[static_cast<std::size_t>(i)] = center - half_width + step * i;
  }
  return v;
}

Trace simulate_trace(const TraceModel& model) {
  return simulate_trace(model, model.grating.effective_slit_width());
}

Trace simulate_trace(const TraceModel& model, double effective_slit_width) {
  const Grating grating = model.grating.with_effective_slit_width(effective_slit_width);
  const double L2 = model.geometry.L2();

  Trace sum;
  for (double v : model.band.velocities()) {
    const double wavelength = de_broglie_wavelength(model.molecule, v);
    const auto coh = coherence(model.source, model.geometry, wavelength, grating.period(),
                               model.coherence_prefactor);
    Trace t = normalized_to_unit_area(kirchhoff_pattern(
        grating, 2.0 * constants::pi / wavelength, L2, coh.n_coherent_slits, model.grid,
        model.kirchhoff));
    if (sum.intensities.empty()) {
      sum = std::move(t);
    } else {
      for (std::size_t i = 0; i < sum.intensities.size(); ++i) sum.intensities[i] += t.intensities[i];
    }
  }
  return normalized_to_max(detector_convolve(sum, model.grid.psf_sigma));
}

}  // namespace nanograting
