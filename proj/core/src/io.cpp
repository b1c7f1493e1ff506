#include "nanograting/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "nanograting/errors.hpp"

namespace nanograting::io {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace, const Metadata& metadata) {
  for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << '\n';
  out << "position_m,intensity\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_number(trace.positions[i]) << ',' << format_number(trace.intensities[i]) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                     const Metadata& metadata) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_trace_csv(f, trace, metadata);
  if (!f) throw Error("write to '" + path.string() + "' failed");
}

Trace read_trace_csv(std::istream& in) {
  Trace t;
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line.rfind("position_m", 0) != 0) {
        throw ConfigError("trace CSV: expected 'position_m,intensity' header");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("trace CSV line " + std::to_string(line_no) + ": expected two columns");
    }
    try {
      const double x = std::stod(line.substr(0, comma));
      const double y = std::stod(line.substr(comma + 1));
      t.positions.push_back(x);
      t.intensities.push_back(y);
    } catch (const std::logic_error&) {
      throw ConfigError("trace CSV line " + std::to_string(line_no) + ": not a number");
    }
  }
  if (t.size() < 2) throw ConfigError("trace CSV holds fewer than two samples");
  const double pitch = t.pitch();
  if (!(pitch > 0.0)) throw ConfigError("trace CSV positions must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t.positions[i] - t.positions[i - 1]) - pitch) > 1e-6 * pitch) {
      throw ConfigError("trace CSV positions are not uniformly spaced");
    }
  }
  for (double v : t.intensities) {
    if (!(v >= 0.0)) throw ConfigError("trace CSV intensities must be non-negative");
  }
  return t;
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open trace '" + path.string() + "'");
  return read_trace_csv(f);
}

namespace {

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>(bits & 0xffu);
    bits >>= 8;
  }
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

std::filesystem::path write_interferogram(const std::filesystem::path& stem,
                                          const Interferogram& image, const Metadata& metadata) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path sidecar = stem;
  sidecar += ".json";

  std::ofstream data(bin, std::ios::binary);
  if (!data) throw Error("cannot open '" + bin.string() + "' for writing");
  for (double v : image.data()) put_le(data, v);
  if (!data) throw Error("write to '" + bin.string() + "' failed");

  nlohmann::ordered_json j;
  j["format"] = "nanograting-interferogram";
  j["data"] = bin.filename().string();
  j["dtype"] = "float64-le";
  j["nx"] = image.nx();
  j["ny"] = image.ny();
  j["x_min_m"] = image.x_min();
  j["y_min_m"] = image.y_min();
  j["pitch_x_m"] = image.pitch_x();
  j["pitch_y_m"] = image.pitch_y();
  j["row_order"] = "bottom-to-top";
  j["y_axis"] = "up-positive";
  auto& meta = j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;

  std::ofstream side(sidecar);
  if (!side) throw Error("cannot open '" + sidecar.string() + "' for writing");
  side << j.dump(2) << '\n';
  if (!side) throw Error("write to '" + sidecar.string() + "' failed");
  return sidecar;
}

Interferogram read_interferogram(const std::filesystem::path& sidecar) {
  std::ifstream side(sidecar);
  if (!side) throw ConfigError("cannot open interferogram sidecar '" + sidecar.string() + "'");
  nlohmann::json j;
  try {
    side >> j;
    if (j.at("dtype").get<std::string>() != "float64-le") {
      throw ConfigError("unsupported interferogram dtype");
    }
    const auto nx = j.at("nx").get<std::size_t>();
    const auto ny = j.at("ny").get<std::size_t>();
    const auto bin = sidecar.parent_path() / j.at("data").get<std::string>();
    std::ifstream data(bin, std::ios::binary);
    if (!data) throw ConfigError("cannot open interferogram data '" + bin.string() + "'");
    std::vector<unsigned char> raw(nx * ny * 8);
    data.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (data.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw ConfigError("interferogram data shorter than nx*ny");
    }
    std::vector<double> values(nx * ny);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le(raw.data() + 8 * i);
    return Interferogram(nx, ny, j.at("x_min_m").get<double>(), j.at("y_min_m").get<double>(),
                         j.at("pitch_x_m").get<double>(), j.at("pitch_y_m").get<double>(),
                         std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed interferogram sidecar: " + std::string(e.what()));
  }
}

void write_interferogram_csv(std::ostream& out, const Interferogram& image) {
  for (std::size_t iy = 0; iy < image.ny(); ++iy) {
    for (std::size_t ix = 0; ix < image.nx(); ++ix) {
      if (ix) out << ',';
      out << format_number(image.at(ix, iy));
    }
    out << '\n';
  }
}

void write_report(std::ostream& out, const Metadata& report) {
  std::size_t width = 0;
  for (const auto& [k, v] : report) width = std::max(width, k.size());
  for (const auto& [k, v] : report) {
    out << k << std::string(width - k.size(), ' ') << " = " << v << '\n';
  }
}

}  // namespace nanograting::io
