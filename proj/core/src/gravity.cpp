#include "nanograting/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nanograting/errors.hpp"

namespace nanograting {

double fall_position(double velocity, const BeamlineGeometry& geometry) {
  if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
  const double L = geometry.L();
  const double L1 = geometry.L1();
  const double line = geometry.y0() + (geometry.y1() - geometry.y0()) * L / L1;
  return line - geometry.g() * L * (L - L1) / (2.0 * velocity * velocity);
}

double fit_velocity(double y2, double y0, double y1, const BeamlineGeometry& geometry) {
  const double L = geometry.L();
  const double L1 = geometry.L1();
  const double numerator = geometry.g() * (L * L1 - L * L) / 2.0;
  const double denominator = y2 - y0 - (y1 - y0) * L / L1;
  if (!(denominator < 0.0)) {
    throw DegenerateGeometryError("arrival height on or above the ballistic source-grating line");
  }
  return std::sqrt(numerator / denominator);
}

VelocityDistribution::VelocityDistribution(VelocityDistributionKind kind, double a, double b,
                                           std::vector<VelocityClass> classes)
    : kind_(kind), a_(a), b_(b), classes_(std::move(classes)) {
  double total = 0.0;
  for (const auto& c : classes_) {
    if (!(c.velocity > 0.0)) throw DomainError("class velocities must be positive");
    if (!(c.weight >= 0.0)) throw DomainError("class weights must be non-negative");
    total += c.weight;
  }
  if (!(total > 0.0)) throw DomainError("velocity distribution has zero total weight");
  for (auto& c : classes_) c.weight /= total;
}

namespace {

std::vector<VelocityClass> uniform_bins(double lo, double hi, int n,
                                        const auto& density) {
  if (n < 1) throw DomainError("need at least one velocity class");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("velocity range must satisfy 0 < lo < hi");
  std::vector<VelocityClass> out;
  out.reserve(static_cast<std::size_t>(n));
  const double width = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    const double v = lo + (i + 0.5) * width;
    out.push_back({v, density(v)});
  }
  return out;
}

}  // namespace

VelocityDistribution VelocityDistribution::maxwell_boltzmann_beam(double most_probable, int classes,
                                                                  double lo_factor,
                                                                  double hi_factor) {
  if (!(most_probable > 0.0)) throw DomainError("most probable velocity must be positive");
  const auto density = [vp = most_probable](double v) {
    const double r = v / vp;
    return r * r * r * std::exp(-r * r);
  };
  return VelocityDistribution(
      VelocityDistributionKind::maxwell_boltzmann_beam, most_probable, 0.0,
      uniform_bins(lo_factor * most_probable, hi_factor * most_probable, classes, density));
}

VelocityDistribution VelocityDistribution::uniform_band(double v_min, double v_max, int classes) {
  return VelocityDistribution(VelocityDistributionKind::uniform_band, v_min, v_max,
                              uniform_bins(v_min, v_max, classes, [](double) { return 1.0; }));
}

VelocityDistribution VelocityDistribution::discrete(std::vector<VelocityClass> classes) {
  if (classes.empty()) throw DomainError("discrete distribution needs at least one class");
  return VelocityDistribution(VelocityDistributionKind::discrete, 0.0, 0.0, std::move(classes));
}

double VelocityDistribution::weight(double velocity) const {
  switch (kind_) {
    case VelocityDistributionKind::maxwell_boltzmann_beam: {
      if (!(velocity > 0.0)) return 0.0;
      const double r = velocity / a_;
      return r * r * r * std::exp(-r * r);
    }
    case VelocityDistributionKind::uniform_band:
      return (velocity >= a_ && velocity <= b_) ? 1.0 : 0.0;
    case VelocityDistributionKind::discrete:
      for (const auto& c : classes_) {
        if (c.velocity == velocity) return c.weight;
      }
      return 0.0;
  }
  return 0.0;
}

std::size_t ImageGrid::ny() const {
  if (!(y_max > y_min) || !(pitch_y > 0.0)) {
    throw DomainError("image grid requires y_min < y_max and positive pitch");
  }
  return static_cast<std::size_t>(std::floor((y_max - y_min) / pitch_y + 1e-9)) + 1;
}

SynthesisResult synthesize_image(const VelocityDistribution& distribution, const Grating& grating,
                                 const Molecule& molecule, const SourceModel& source,
                                 const BeamlineGeometry& geometry, const ImageGrid& grid,
                                 const SynthesisOptions& options) {
  grid.x.validate();
  for (const auto& c : distribution.classes()) {
    if (c.velocity < 50.0 || c.velocity > 1000.0) {
      throw DomainError("velocity classes must lie within [50, 1000] m/s");
    }
  }

  const std::size_t nx = grid.x.size();
  const std::size_t ny = grid.ny();
  SynthesisResult result{Interferogram(nx, ny, grid.x.x_min, grid.y_min, grid.x.pitch, grid.pitch_y)};
  auto& data = result.image.data();

  for (const auto& cls : distribution.classes()) {
    if (cls.weight == 0.0) continue;
    const double row = (fall_position(cls.velocity, geometry) - grid.y_min) / grid.pitch_y;
    const double last = static_cast<double>(ny - 1);
    if (row < 0.0 || row > last) {
      ++result.clipped_classes;
      result.clipped_weight += cls.weight;
      continue;
    }
    const double wavelength = de_broglie_wavelength(molecule, cls.velocity);
    const auto coh = coherence(source, geometry, wavelength, grating.period(),
                               options.coherence_prefactor);
    const Trace t = normalized_to_unit_area(kirchhoff_pattern(
        grating, 2.0 * constants::pi / wavelength, geometry.L2(), coh.n_coherent_slits, grid.x,
        options.kirchhoff));

    const auto lower = std::min(static_cast<std::size_t>(std::floor(row)), ny - 1);
    const double frac = row - static_cast<double>(lower);
    const double w_lo = cls.weight * (1.0 - frac);
    const double w_hi = cls.weight * frac;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      data[lower * nx + ix] += w_lo * t.intensities[ix];
    }
    if (w_hi > 0.0 && lower + 1 < ny) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        data[(lower + 1) * nx + ix] += w_hi * t.intensities[ix];
      }
    }
  }

  const double sigma = grid.x.psf_sigma;
  result.image = gaussian_blur(result.image, sigma, sigma);
  return result;
}

namespace {

double parabolic_offset(const std::vector<double>& t, std::size_t i) {
  if (i == 0 || i + 1 >= t.size()) return 0.0;
  const double denom = t[i - 1] - 2.0 * t[i] + t[i + 1];
  if (denom >= 0.0) return 0.0;
  return 0.5 * (t[i - 1] - t[i + 1]) / denom;
}

// Highest strict local maximum with index in [lo, hi); npos if none.
std::size_t highest_local_max(const std::vector<double>& t, std::size_t lo, std::size_t hi) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min(hi, t.size() - 1);
  for (std::size_t i = lo; i < hi; ++i) {
    if (t[i] > t[i - 1] && t[i] >= t[i + 1]) {
      if (best == std::numeric_limits<std::size_t>::max() || t[i] > t[best]) best = i;
    }
  }
  return best;
}

}  // namespace

StripeProfile stripe_velocity_profile(const Interferogram& image, const BeamlineGeometry& geometry,
                                      double period, const Molecule& molecule,
                                      const StripeOptions& options) {
  if (options.stripes < 1) throw DomainError("need at least one stripe");
  if (!(period > 0.0)) throw DomainError("grating period must be positive");
  const std::size_t nx = image.nx();
  const std::size_t ny = image.ny();
  const auto n_stripes = static_cast<std::size_t>(options.stripes);
  if (ny < n_stripes) throw DomainError("image has fewer rows than stripes");

  // Zeroth order: the column that dominates the whole image.
  std::vector<double> columns(nx, 0.0);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) columns[ix] += image.at(ix, iy);
  }
  const auto i0 = static_cast<std::size_t>(
      std::max_element(columns.begin(), columns.end()) - columns.begin());
  const double x0 = image.x(i0) + parabolic_offset(columns, i0) * image.pitch_x();

  struct Band {
    std::vector<double> trace;
    double peak = 0.0;
    double y = 0.0;
  };
  std::vector<Band> bands(n_stripes);
  double strongest = 0.0;
  for (std::size_t s = 0; s < n_stripes; ++s) {
    const std::size_t r0 = s * ny / n_stripes;
    const std::size_t r1 = (s + 1) * ny / n_stripes;
    Band& b = bands[s];
    b.trace.assign(nx, 0.0);
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t iy = r0; iy < r1; ++iy) {
      double row_sum = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        b.trace[ix] += image.at(ix, iy);
        row_sum += image.at(ix, iy);
      }
      weight += row_sum;
      moment += row_sum * image.y(iy);
    }
    b.y = weight > 0.0 ? moment / weight : 0.5 * (image.y(r0) + image.y(r1 - 1));
    b.peak = *std::max_element(b.trace.begin(), b.trace.end());
    strongest = std::max(strongest, b.peak);
  }

  StripeProfile profile;
  const double sep_px = options.min_order_separation / image.pitch_x();
  const auto sep = static_cast<std::size_t>(std::ceil(sep_px));
  // Stripe index 0 is the bottom row band; report top to bottom.
  for (std::size_t k = n_stripes; k-- > 0;) {
    const Band& b = bands[k];
    const int id = static_cast<int>(n_stripes - 1 - k);
    if (!(strongest > 0.0) || b.peak < options.min_relative_signal * strongest) {
      profile.skipped.push_back(id);
      continue;
    }
    const double floor_height = options.min_peak_fraction * b.trace[i0];
    double offset_sum = 0.0;
    int found = 0;
    const std::size_t right = highest_local_max(b.trace, i0 + sep, nx);
    if (right < nx && b.trace[right] > floor_height) {
      const double x = image.x(right) + parabolic_offset(b.trace, right) * image.pitch_x();
      offset_sum += x - x0;
      ++found;
    }
    if (i0 > sep) {
      const std::size_t left = highest_local_max(b.trace, 0, i0 - sep + 1);
      if (left < nx && b.trace[left] > floor_height) {
        const double x = image.x(left) + parabolic_offset(b.trace, left) * image.pitch_x();
        offset_sum += x0 - x;
        ++found;
      }
    }
    if (found == 0) {
      profile.skipped.push_back(id);
      continue;
    }
    const double offset = offset_sum / found;
    const double wavelength = period * std::sin(std::atan(offset / geometry.L2()));
    StripeSample sample{};
    sample.stripe = id;
    sample.y = b.y;
    sample.first_order_offset = offset;
    sample.velocity = constants::planck / (molecule.mass() * wavelength);
    profile.samples.push_back(sample);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = static_cast<int>(profile.samples.size()) < options.min_stripes_for_fit;
  if (!degenerate) {
    std::vector<double> v;
    for (const auto& s : profile.samples) v.push_back(s.velocity);
    std::sort(v.begin(), v.end());
    const double median = v[v.size() / 2];
    degenerate = (v.back() - v.front()) < options.min_velocity_span * median;
  }
  if (degenerate) {
    profile.underdetermined = true;
    profile.ballistic_intercept = nan;
    profile.rms_residual = nan;
    for (auto& s : profile.samples) {
      s.fitted_velocity = nan;
      s.residual = nan;
    }
    return profile;
  }

  // y = c - K / v^2 with K = g L (L - L1) / 2; least squares in y gives c.
  const double L = geometry.L();
  const double K = geometry.g() * L * (L - geometry.L1()) / 2.0;
  double c = 0.0;
  for (const auto& s : profile.samples) c += s.y + K / (s.velocity * s.velocity);
  c /= static_cast<double>(profile.samples.size());
  profile.ballistic_intercept = c;

  double ss = 0.0;
  std::size_t used = 0;
  for (auto& s : profile.samples) {
    if (s.y >= c) {
      s.fitted_velocity = nan;
      s.residual = nan;
      continue;
    }
    s.fitted_velocity = fit_velocity(s.y, c, c, geometry);
    s.residual = s.velocity - s.fitted_velocity;
    ss += s.residual * s.residual;
    ++used;
  }
  profile.rms_residual = used > 0 ? std::sqrt(ss / static_cast<double>(used)) : nan;
  return profile;
}

}  // namespace nanograting
