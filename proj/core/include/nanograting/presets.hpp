#pragma once

#include <string_view>
#include <vector>

#include "nanograting/domain.hpp"

namespace nanograting::presets {

// Graphene areal mass density per layer.
inline constexpr double graphene_areal_density = 7.6e-7;  // kg/m^2

// Grating names: sinx, slg, scroll, bilayer, biphenyl.
const Grating& grating(std::string_view name);
std::vector<std::string_view> grating_names();
bool has_grating(std::string_view name);

// Molecule names: pch2.
const Molecule& molecule(std::string_view name);
std::vector<std::string_view> molecule_names();

// 1554 mm source-grating, 2140 mm source-detector, g = 9.81 m/s^2.
BeamlineGeometry beamline();

// 1.5 um laser-desorption spot, 220 m/s most probable velocity.
SourceModel source();

// Geometry of one rolled-up scroll bar, used for the thermal-vibration estimate.
struct ScrollBar {
  double length;    // m, clamped length
  double diameter;  // m
};
ScrollBar scroll_bar();

}  // namespace nanograting::presets
