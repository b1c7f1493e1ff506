#include "cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nanograting/errors.hpp"
#include "nanograting/presets.hpp"

namespace nanograting::cli {
namespace {

constexpr double nm = 1e-9;
constexpr double um = 1e-6;
constexpr double mm = 1e-3;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': '" + std::string(text) + "' is not an integer");
  }
  return v;
}

int to_int(std::string_view key, std::string_view text) {
  return static_cast<int>(to_integer(key, text));
}

// "220, 260:2" -> {220 m/s weight 1, 260 m/s weight 2}
std::vector<VelocityClass> to_velocity_list(std::string_view key, std::string_view text) {
  std::vector<VelocityClass> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (!item.empty()) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) {
        out.push_back({to_double(key, item), 1.0});
      } else {
        out.push_back({to_double(key, item.substr(0, colon)), to_double(key, item.substr(colon + 1))});
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("'" + std::string(key) + "' lists no velocities");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

Setter scaled(std::optional<double> RunConfig::*field, double scale) {
  return [=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_double(k, v) * scale; };
}

Setter scaled(double RunConfig::*field, double scale) {
  return [=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_double(k, v) * scale; };
}

Setter integer(int RunConfig::*field) {
  return [=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_int(k, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"molecule.preset",
       [](RunConfig& c, std::string_view, std::string_view v) {
         presets::molecule(v);
         c.molecule_preset = std::string(v);
       }},
      {"molecule.mass_u", scaled(&RunConfig::molecule_mass, constants::atomic_mass_unit)},
      {"molecule.mass_kg", scaled(&RunConfig::molecule_mass, 1.0)},

      {"grating.preset",
       [](RunConfig& c, std::string_view, std::string_view v) {
         presets::grating(v);
         c.grating_preset = std::string(v);
       }},
      {"grating.period_nm", scaled(&RunConfig::period, nm)},
      {"grating.slit_nm", scaled(&RunConfig::slit_width, nm)},
      {"grating.seff_nm", scaled(&RunConfig::effective_slit_width, nm)},
      {"grating.bar_length_nm", scaled(&RunConfig::bar_length, nm)},
      {"grating.bar_width_nm", scaled(&RunConfig::bar_width, nm)},
      {"grating.layers",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.layers = to_int(k, v); }},
      {"grating.areal_density_kg_m2", scaled(&RunConfig::areal_density, 1.0)},

      {"geometry.L1_mm", scaled(&RunConfig::L1, mm)},
      {"geometry.L_mm", scaled(&RunConfig::L, mm)},
      {"geometry.g_m_s2", scaled(&RunConfig::gravity, 1.0)},
      {"geometry.y0_um", scaled(&RunConfig::y0, um)},
      {"geometry.y1_um", scaled(&RunConfig::y1, um)},

      {"source.width_um", scaled(&RunConfig::source_width, um)},
      {"source.vp_m_s", scaled(&RunConfig::most_probable_velocity, 1.0)},

      {"velocity.center_m_s",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.band.center = to_double(k, v); }},
      {"velocity.half_width_m_s",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.band.half_width = to_double(k, v); }},
      {"velocity.samples",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.band.samples = to_int(k, v); }},
      {"velocity.distribution",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v != "mb" && v != "uniform" && v != "discrete") {
           throw ConfigError("'" + std::string(k) + "' must be mb, uniform or discrete");
         }
         c.distribution = std::string(v);
       }},
      {"velocity.classes", integer(&RunConfig::velocity_classes)},
      {"velocity.min_m_s", scaled(&RunConfig::velocity_min, 1.0)},
      {"velocity.max_m_s", scaled(&RunConfig::velocity_max, 1.0)},
      {"velocity.list_m_s",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.velocity_list = to_velocity_list(k, v);
       }},

      {"detector.x_min_um", scaled(&RunConfig::x_min, um)},
      {"detector.x_max_um", scaled(&RunConfig::x_max, um)},
      {"detector.pitch_um", scaled(&RunConfig::pitch, um)},
      {"detector.psf_sigma_um", scaled(&RunConfig::psf_sigma, um)},
      {"detector.orders", integer(&RunConfig::detector_orders)},

      {"image.y_min_um", scaled(&RunConfig::y_min, um)},
      {"image.y_max_um", scaled(&RunConfig::y_max, um)},
      {"image.pitch_y_um", scaled(&RunConfig::pitch_y, um)},
      {"image.orders", integer(&RunConfig::image_orders)},
      {"image.stretch", scaled(&RunConfig::stretch, 1.0)},

      {"coherence.prefactor", scaled(&RunConfig::coherence_prefactor, 1.0)},
      {"coherence.window",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "uniform") {
           c.window = CoherenceWindow::uniform;
         } else if (v == "gaussian") {
           c.window = CoherenceWindow::gaussian;
         } else {
           throw ConfigError("'" + std::string(k) + "' must be uniform or gaussian");
         }
       }},
      {"coherence.gaussian_fraction", scaled(&RunConfig::gaussian_fraction, 1.0)},
      {"coherence.phase_step_rad", scaled(&RunConfig::phase_step, 1.0)},

      {"fit.lower_nm",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.fit.lower_bound = to_double(k, v) * nm; }},
      {"fit.step_nm",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.fit.coarse_step = to_double(k, v) * nm; }},
      {"fit.tolerance_nm",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.fit.tolerance = to_double(k, v) * nm; }},

      {"noise.relative", scaled(&RunConfig::noise, 1.0)},
      {"noise.seed",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         const auto s = to_integer(k, v);
         if (s < 0) throw ConfigError("'" + std::string(k) + "' must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},

      {"stripes.count", integer(&RunConfig::stripes)},
      {"stripes.min_signal", scaled(&RunConfig::stripe_min_signal, 1.0)},

      {"limits.sigma_nm", scaled(&RunConfig::limits_sigma, nm)},
      {"limits.scroll_length_um", scaled(&RunConfig::scroll_length, um)},
      {"limits.scroll_diameter_nm", scaled(&RunConfig::scroll_diameter, nm)},
      {"limits.temperature_K", scaled(&RunConfig::temperature, 1.0)},
      {"limits.youngs_modulus_TPa", scaled(&RunConfig::youngs_modulus, 1e12)},
      {"limits.slit_nm", scaled(&RunConfig::limits_slit, nm)},
      {"limits.period_nm", scaled(&RunConfig::limits_period, nm)},
      {"limits.n_max", integer(&RunConfig::n_max)},
      {"limits.lambda_ref_nm", scaled(&RunConfig::lambda_ref, nm)},
      {"limits.molecules", scaled(&RunConfig::molecule_count, 1.0)},
      {"limits.open_area_um2", scaled(&RunConfig::open_area, um * um)},
      {"limits.footprint_nm2", scaled(&RunConfig::footprint, nm * nm)},
  };
  return table;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  if (value.empty()) throw ConfigError("config key '" + std::string(key) + "' has no value");
  it->second(config, key, value);
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  apply_config_text(config, ss.str());
}

void apply_preset(RunConfig& config, std::string_view name) {
  if (presets::has_grating(name)) {
    config.grating_preset = std::string(name);
    return;
  }
  for (auto m : presets::molecule_names()) {
    if (m == name) {
      config.molecule_preset = std::string(name);
      return;
    }
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : setters()) keys.push_back(k);
  return keys;
}

Molecule RunConfig::molecule() const {
  const Molecule& base = presets::molecule(molecule_preset);
  if (!molecule_mass) return base;
  return Molecule(base.name(), *molecule_mass, base.polarizability());
}

Grating RunConfig::grating() const {
  GratingParams p = presets::grating(grating_preset).params();
  if (period) p.period = *period;
  if (slit_width) p.slit_width = *slit_width;
  if (effective_slit_width) p.effective_slit_width = *effective_slit_width;
  if (bar_length) p.bar_length = *bar_length;
  if (bar_width) p.bar_width = *bar_width;
  if (layers) p.layers = *layers;
  if (areal_density) p.areal_density = *areal_density;
  // Overriding the slit without s_eff keeps the preset's suppression ratio sane.
  if (slit_width && !effective_slit_width) p.effective_slit_width = std::min(p.effective_slit_width, p.slit_width);
  return Grating(std::move(p));
}

BeamlineGeometry RunConfig::geometry() const {
  const BeamlineGeometry base = presets::beamline();
  return BeamlineGeometry(L1.value_or(base.L1()), L.value_or(base.L()), gravity.value_or(base.g()),
                          y0, y1);
}

SourceModel RunConfig::source() const {
  const SourceModel base = presets::source();
  return SourceModel(source_width.value_or(base.source_width()),
                     most_probable_velocity.value_or(base.most_probable_velocity()));
}

KirchhoffOptions RunConfig::kirchhoff() const {
  KirchhoffOptions k;
  k.max_phase_step = phase_step;
  k.window = window;
  k.gaussian_width_fraction = gaussian_fraction;
  return k;
}

DetectorGrid RunConfig::detector() const {
  if (x_min || x_max) {
    if (!x_min || !x_max) throw ConfigError("detector.x_min_um and detector.x_max_um go together");
    DetectorGrid g{*x_min, *x_max, pitch, psf_sigma};
    g.validate();
    return g;
  }
  if (detector_orders < 1) throw ConfigError("detector.orders must be at least 1");
  const double wavelength = de_broglie_wavelength(molecule(), band.center);
  const double fringe = wavelength * geometry().L2() / grating().period();
  return DetectorGrid::symmetric((detector_orders + 0.5) * fringe, pitch, psf_sigma);
}

TraceModel RunConfig::trace_model() const {
  return TraceModel{molecule(), grating(), source(), geometry(), band, detector(),
                    coherence_prefactor, kirchhoff()};
}

VelocityDistribution RunConfig::velocity_distribution() const {
  if (distribution == "discrete") {
    if (velocity_list.empty()) throw ConfigError("discrete distribution needs velocity.list_m_s");
    return VelocityDistribution::discrete(velocity_list);
  }
  if (distribution == "uniform") {
    if (!velocity_min || !velocity_max) {
      throw ConfigError("uniform distribution needs velocity.min_m_s and velocity.max_m_s");
    }
    return VelocityDistribution::uniform_band(*velocity_min, *velocity_max, velocity_classes);
  }
  const double vp = source().most_probable_velocity();
  const double lo = velocity_min.value_or(vp / 3.0);
  const double hi = velocity_max.value_or(3.0 * vp);
  return VelocityDistribution::maxwell_boltzmann_beam(vp, velocity_classes, lo / vp, hi / vp);
}

ImageGrid RunConfig::image_grid() const {
  const auto geom = geometry();
  // Default window: arrival heights of 120 .. 400 m/s molecules plus blur margin.
  constexpr double slowest = 120.0;
  constexpr double fastest = 400.0;
  ImageGrid g;
  g.y_min = y_min.value_or(fall_position(slowest, geom) - 3.0 * psf_sigma);
  g.y_max = y_max.value_or(fall_position(fastest, geom) + 3.0 * psf_sigma);
  g.pitch_y = pitch_y;
  if (x_min || x_max) {
    g.x = detector();
  } else {
    if (image_orders < 1) throw ConfigError("image.orders must be at least 1");
    const double wavelength = de_broglie_wavelength(molecule(), slowest);
    const double fringe = wavelength * geom.L2() / grating().period();
    g.x = DetectorGrid::symmetric((image_orders + 0.5) * fringe, std::max(pitch, 1e-6), psf_sigma);
  }
  g.ny();
  return g;
}

bool RunConfig::sigma_from_thermal_model() const {
  return !limits_sigma && (grating_preset == "scroll" || scroll_length || scroll_diameter);
}

limits::LimitsInput RunConfig::limits_input() const {
  const Grating g = grating();
  double sigma = limits_sigma.value_or(0.1 * nm);
  if (sigma_from_thermal_model()) {
    const auto bar = presets::scroll_bar();
    sigma = limits::thermal_scroll_amplitude(scroll_length.value_or(bar.length),
                                             scroll_diameter.value_or(bar.diameter), temperature,
                                             youngs_modulus);
  }
  limits::LimitsInput in;
  in.sigma = sigma;
  in.slit_width = limits_slit.value_or(g.slit_width());
  in.period = limits_period.value_or(g.period());
  in.n_max = n_max;
  in.lambda_ref = lambda_ref;
  return in;
}

io::Metadata RunConfig::describe() const {
  const Molecule m = molecule();
  const Grating g = grating();
  const BeamlineGeometry geom = geometry();
  const SourceModel src = source();
  return {
      {"molecule", m.name()},
      {"molecule.mass_kg", num(m.mass())},
      {"grating", grating_preset + " (" + g.label() + ")"},
      {"grating.period_nm", num(g.period() / nm)},
      {"grating.slit_nm", num(g.slit_width() / nm)},
      {"grating.seff_nm", num(g.effective_slit_width() / nm)},
      {"geometry.L1_mm", num(geom.L1() / mm)},
      {"geometry.L_mm", num(geom.L() / mm)},
      {"geometry.L2_mm", num(geom.L2() / mm)},
      {"geometry.g_m_s2", num(geom.g())},
      {"source.width_um", num(src.source_width() / um)},
      {"source.vp_m_s", num(src.most_probable_velocity())},
      {"velocity.center_m_s", num(band.center)},
      {"velocity.half_width_m_s", num(band.half_width)},
      {"velocity.samples", std::to_string(band.samples)},
      {"detector.pitch_um", num(pitch / um)},
      {"detector.psf_sigma_um", num(psf_sigma / um)},
      {"coherence.prefactor", num(coherence_prefactor)},
      {"coherence.window", window == CoherenceWindow::uniform ? "uniform" : "gaussian"},
      {"coherence.phase_step_rad", num(phase_step)},
  };
}

}  // namespace nanograting::cli
