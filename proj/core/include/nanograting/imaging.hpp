#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nanograting/diffraction.hpp"
#include "nanograting/interferogram.hpp"

namespace nanograting {

struct Rgb {
  double r;
  double g;
  double b;
};

using Rgb8 = std::array<std::uint8_t, 3>;

// Black -> red -> yellow -> white "Hot" map, 100 rows at signal 0.00 .. 0.99.
class ColorMapHot {
 public:
  static constexpr std::size_t rows = 100;
  static const std::array<Rgb, rows>& table();

  /// Exact table row at multiples of 0.01, linear in between; clamps to [0, 1].
  Rgb operator()(double value) const;
  Rgb8 bytes(double value) const;
  /// Signal value whose quantized color is closest to `c`.
  double invert(const Rgb8& c) const;
};

Rgb hot_color(double value);

Interferogram subtract_background(const Interferogram& image, const Interferogram& background);

/// Column-wise sum over rows whose centre lies within y_center +- half_width.
Trace extract_band(const Interferogram& image, double y_center, double half_width,
                   bool normalize = false);

struct Pixmap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first
};

/// Binary P6 (maxval 255). Intensities are divided by the image maximum;
/// top output row = highest y. `vertical_stretch` resamples rows to
/// round(stretch * ny) by nearest neighbour.
std::vector<std::uint8_t> render_ppm(const Interferogram& image, const ColorMapHot& map = {},
                                     double vertical_stretch = 1.0);
Pixmap decode_ppm(const std::vector<std::uint8_t>& bytes);
void write_binary_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace nanograting
