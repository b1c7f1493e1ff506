#include "nanograting/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "nanograting/errors.hpp"

namespace nanograting {

const std::array<Rgb, ColorMapHot::rows>& ColorMapHot::table() {
  static const std::array<Rgb, rows> kTable{{
    {0, 0, 0},  // 0.00
    {0.07143, 0, 0},  // 0.01
    {0.14286, 0, 0},  // 0.02
    {0.21429, 0, 0},  // 0.03
    {0.28571, 0, 0},  // 0.04
    {0.35714, 0, 0},  // 0.05
    {0.42857, 0, 0},  // 0.06
    {0.5, 0, 0},  // 0.07
    {0.57143, 0, 0},  // 0.08
    {0.64286, 0, 0},  // 0.09
    {0.71429, 0, 0},  // 0.10
    {0.78571, 0, 0},  // 0.11
    {0.85714, 0, 0},  // 0.12
    {0.92857, 0, 0},  // 0.13
    {1, 0, 0},  // 0.14
    {1, 0.02173, 0},  // 0.15
    {1, 0.04346, 0},  // 0.16
    {1, 0.06519, 0},  // 0.17
    {1, 0.08691, 0},  // 0.18
    {1, 0.10864, 0},  // 0.19
    {1, 0.13037, 0},  // 0.20
    {1, 0.1521, 0},  // 0.21
    {1, 0.17383, 0},  // 0.22
    {1, 0.19556, 0},  // 0.23
    {1, 0.21728, 0},  // 0.24
    {1, 0.23901, 0},  // 0.25
    {1, 0.26074, 0},  // 0.26
    {1, 0.28247, 0},  // 0.27
    {1, 0.3042, 0},  // 0.28
    {1, 0.32593, 0},  // 0.29
    {1, 0.34765, 0},  // 0.30
    {1, 0.36938, 0},  // 0.31
    {1, 0.39111, 0},  // 0.32
    {1, 0.41284, 0},  // 0.33
    {1, 0.43457, 0},  // 0.34
    {1, 0.4563, 0},  // 0.35
    {1, 0.47802, 0},  // 0.36
    {1, 0.49975, 0},  // 0.37
    {1, 0.52148, 0},  // 0.38
    {1, 0.54321, 0},  // 0.39
    {1, 0.56494, 0},  // 0.40
    {1, 0.58667, 0},  // 0.41
    {1, 0.6084, 0},  // 0.42
    {1, 0.63012, 0},  // 0.43
    {1, 0.65185, 0},  // 0.44
    {1, 0.67358, 0},  // 0.45
    {1, 0.69531, 0},  // 0.46
    {1, 0.71704, 0},  // 0.47
    {1, 0.73877, 0},  // 0.48
    {1, 0.76049, 0},  // 0.49
    {1, 0.78222, 0},  // 0.50
    {1, 0.80395, 0},  // 0.51
    {1, 0.82568, 0},  // 0.52
    {1, 0.84741, 0},  // 0.53
    {1, 0.86914, 0},  // 0.54
    {1, 0.89086, 0},  // 0.55
    {1, 0.91259, 0},  // 0.56
    {1, 0.93432, 0},  // 0.57
    {1, 0.95605, 0},  // 0.58
    {1, 0.97778, 0},  // 0.59
    {1, 0.97833, 0.025},  // 0.60
    {1, 0.97889, 0.05},  // 0.61
    {1, 0.97944, 0.075},  // 0.62
    {1, 0.98, 0.1},  // 0.63
    {1, 0.98056, 0.125},  // 0.64
    {1, 0.98111, 0.15},  // 0.65
    {1, 0.98167, 0.175},  // 0.66
    {1, 0.98222, 0.2},  // 0.67
    {1, 0.98278, 0.225},  // 0.68
    {1, 0.98333, 0.25},  // 0.69
    {1, 0.98389, 0.275},  // 0.70
    {1, 0.98444, 0.3},  // 0.71
    {1, 0.985, 0.325},  // 0.72
    {1, 0.98556, 0.35},  // 0.73
    {1, 0.98611, 0.375},  // 0.74
    {1, 0.98667, 0.4},  // 0.75
    {1, 0.98722, 0.425},  // 0.76
    {1, 0.98778, 0.45},  // 0.77
    {1, 0.98833, 0.475},  // 0.78
    {1, 0.98889, 0.5},  // 0.79
    {1, 0.98944, 0.525},  // 0.80
    {1, 0.99, 0.55},  // 0.81
    {1, 0.99056, 0.575},  // 0.82
    {1, 0.99111, 0.6},  // 0.83
    {1, 0.99167, 0.625},  // 0.84
    {1, 0.99222, 0.65},  // 0.85
    {1, 0.99278, 0.675},  // 0.86
    {1, 0.99333, 0.7},  // 0.87
    {1, 0.99389, 0.725},  // 0.88
    {1, 0.99444, 0.75},  // 0.89
    {1, 0.995, 0.775},  // 0.90
    {1, 0.99556, 0.8},  // 0.91
    {1, 0.99611, 0.825},  // 0.92
    {1, 0.99667, 0.85},  // 0.93
    {1, 0.99722, 0.875},  // 0.94
    {1, 0.99778, 0.9},  // 0.95
    {1, 0.99833, 0.925},  // 0.96
    {1, 0.99889, 0.95},  // 0.97
    {1, 0.99944, 0.975},  // 0.98
    {1, 1, 1},  // 0.99
  }};
  return kTable;
}

Rgb ColorMapHot::operator()(double value) const {
  const auto& t = table();
  if (!(value > 0.0)) return t.front();
  const double pos = value * 100.0;
  const double last = static_cast<double>(rows - 1);
  if (pos >= last) return t.back();
  const auto i = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(i);
  if (f == 0.0) return t[i];
  const Rgb& a = t[i];
  const Rgb& b = t[i + 1];
  return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

namespace {

std::uint8_t quantize(double channel) {
  return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(channel, 0.0, 1.0)));
}

}  // namespace

Rgb8 ColorMapHot::bytes(double value) const {
  const Rgb c = (*this)(value);
  return {quantize(c.r), quantize(c.g), quantize(c.b)};
}

double ColorMapHot::invert(const Rgb8& c) const {
  const auto& t = table();
  const double cr = c[0] / 255.0;
  const double cg = c[1] / 255.0;
  const double cb = c[2] / 255.0;
  double best_value = 0.0;
  double best_dist = 1e300;
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    const Rgb& a = t[i];
    const Rgb& b = t[i + 1];
    const double dr = b.r - a.r;
    const double dg = b.g - a.g;
    const double db = b.b - a.b;
    const double len2 = dr * dr + dg * dg + db * db;
    double f = 0.0;
    if (len2 > 0.0) {
      f = ((cr - a.r) * dr + (cg - a.g) * dg + (cb - a.b) * db) / len2;
      f = std::clamp(f, 0.0, 1.0);
    }
    const double er = a.r + f * dr - cr;
    const double eg = a.g + f * dg - cg;
    const double eb = a.b + f * db - cb;
    const double dist = er * er + eg * eg + eb * eb;
    if (dist < best_dist) {
      best_dist = dist;
      best_value = (static_cast<double>(i) + f) / 100.0;
    }
  }
  return best_value;
}

Rgb hot_color(double value) { return ColorMapHot{}(value); }

Interferogram subtract_background(const Interferogram& image, const Interferogram& background) {
  if (!image.same_shape(background)) {
    throw DomainError("image and background dimensions differ");
  }
  Interferogram out = image;
  auto& d = out.data();
  const auto& bg = background.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(0.0, d[i] - bg[i]);
  return out;
}

Trace extract_band(const Interferogram& image, double y_center, double half_width, bool normalize) {
  if (!(half_width >= 0.0)) throw DomainError("band half-width must be non-negative");
  Trace t;
  t.positions.resize(image.nx());
  t.intensities.assign(image.nx(), 0.0);
  for (std::size_t ix = 0; ix < image.nx(); ++ix) t.positions[ix] = image.x(ix);
  std::size_t rows_used = 0;
  const double eps = 1e-9 * image.pitch_y();
  for (std::size_t iy = 0; iy < image.ny(); ++iy) {
    if (std::abs(image.y(iy) - y_center) > half_width + eps) continue;
    ++rows_used;
    for (std::size_t ix = 0; ix < image.nx(); ++ix) t.intensities[ix] += image.at(ix, iy);
  }
  if (rows_used == 0) throw DomainError("band contains no image rows");
  return normalize ? normalized_to_max(std::move(t)) : t;
}

std::vector<std::uint8_t> render_ppm(const Interferogram& image, const ColorMapHot& map,
                                     double vertical_stretch) {
  if (!(vertical_stretch > 0.0)) throw DomainError("vertical stretch must be positive");
  const std::size_t nx = image.nx();
  const std::size_t ny = image.ny();
  const auto height = static_cast<std::size_t>(
      std::max(1L, std::lround(vertical_stretch * static_cast<double>(ny))));
  const double peak = image.max();

  const std::string header =
      "P6\n" + std::to_string(nx) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * nx * height);
  for (std::size_t r = 0; r < height; ++r) {
    const std::size_t from_top = std::min(ny - 1, r * ny / height);
    const std::size_t iy = ny - 1 - from_top;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = peak > 0.0 ? image.at(ix, iy) / peak : 0.0;
      const Rgb8 c = map.bytes(v);
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

Pixmap decode_ppm(const std::vector<std::uint8_t>& bytes) {
  // Header tokens: magic, width, height, maxval, then exactly one whitespace byte.
  std::size_t pos = 0;
  const auto next_token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) tok.push_back(static_cast<char>(bytes[pos++]));
    return tok;
  };
  if (next_token() != "P6") throw DomainError("not a binary P6 pixmap");
  Pixmap p;
  try {
    p.width = std::stoul(next_token());
    p.height = std::stoul(next_token());
    if (std::stoul(next_token()) != 255) throw DomainError("only maxval 255 is supported");
  } catch (const std::logic_error&) {
    throw DomainError("malformed pixmap header");
  }
  ++pos;
  const std::size_t n = 3 * p.width * p.height;
  if (bytes.size() < pos + n) throw DomainError("truncated pixmap data");
  p.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
               bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return p;
}

void write_binary_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace nanograting
