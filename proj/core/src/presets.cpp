#include "nanograting/presets.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "nanograting/errors.hpp"

namespace nanograting::presets {
namespace {

constexpr double nm = 1e-9;

struct GratingRow {
  std::string_view name;
  std::string_view label;
  double period_nm;
  double slit_nm;
  double seff_nm;
  double bar_length_nm;
  double bar_width_nm;
  int layers;
  double areal_density;  // kg/m^2 per layer
  double quoted_opening;
  bool rolled;
};

// Slit widths and s_eff are the values used for the diffraction fits; bar
// dimensions are the measured ribbon geometry used for the mass budget.
// SiNx: 45 nm film at 3440 kg/m^3. Biphenyl: ~1 nm carbon nanomembrane.
// Scroll: bars weighed as the unrolled 64 nm ribbon.
constexpr std::array<GratingRow, 5> kGratings{{
    {"sinx", "SiNx 45 nm", 105, 50, 15, 956, 50, 1, 45e-9 * 3440.0, 0.48, false},
    {"scroll", "carbon nanoscrolls", 88, 65, 49, 1336, 64, 1, graphene_areal_density, 0.74, true},
    {"biphenyl", "carbonaceous biphenyl membrane", 107, 54, 28, 977, 54, 1, 8.3e-7, 0.49, false},
    {"bilayer", "bilayer graphene", 113, 62, 28, 827, 49, 2, graphene_areal_density, 0.56, false},
    {"slg", "single-layer graphene", 101, 59, 35, 247, 41, 1, graphene_areal_density, 0.58, false},
}};

Grating build(const GratingRow& row) {
  GratingParams p;
  p.label = std::string(row.label);
  p.period = row.period_nm * nm;
  p.slit_width = row.slit_nm * nm;
  p.effective_slit_width = row.seff_nm * nm;
  p.bar_length = row.bar_length_nm * nm;
  p.bar_width = row.bar_width_nm * nm;
  p.layers = row.layers;
  p.areal_density = row.areal_density;
  p.quoted_opening_fraction = row.quoted_opening;
  p.rolled = row.rolled;
  return Grating(std::move(p));
}

const std::vector<Grating>& all_gratings() {
  static const std::vector<Grating> gratings = [] {
    std::vector<Grating> out;
    for (const auto& row : kGratings) out.push_back(build(row));
    return out;
  }();
  return gratings;
}

const Molecule& pch2() {
  // Phthalocyanine, 514 u. Polarizability principal values in A^3.
  static const Molecule m("PcH2", 514.0 * constants::atomic_mass_unit,
                          std::array<double, 3>{135.7, 139.9, 27.5});
  return m;
}

}  // namespace

const Grating& grating(std::string_view name) {
  for (std::size_t i = 0; i < kGratings.size(); ++i) {
    if (kGratings[i].name == name) return all_gratings()[i];
  }
  throw ConfigError("unknown grating preset '" + std::string(name) + "'");
}

std::vector<std::string_view> grating_names() {
  std::vector<std::string_view> names;
  for (const auto& row : kGratings) names.push_back(row.name);
  return names;
}

bool has_grating(std::string_view name) {
  return std::any_of(kGratings.begin(), kGratings.end(),
                     [&](const GratingRow& r) { return r.name == name; });
}

const Molecule& molecule(std::string_view name) {
  if (name == "pch2") return pch2();
  throw ConfigError("unknown molecule preset '" + std::string(name) + "'");
}

std::vector<std::string_view> molecule_names() { return {"pch2"}; }

BeamlineGeometry beamline() { return BeamlineGeometry(1.554, 2.140, constants::standard_gravity); }

SourceModel source() { return SourceModel(1.5e-6, 220.0); }

ScrollBar scroll_bar() { return ScrollBar{1.34e-6, 8e-9}; }

}  // namespace nanograting::presets
