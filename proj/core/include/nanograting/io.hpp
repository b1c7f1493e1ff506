#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nanograting/diffraction.hpp"
#include "nanograting/interferogram.hpp"

namespace nanograting::io {

// Ordered key/value pairs echoed into file headers and reports.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double v);

// Trace CSV:
//   # key = value          (zero or more comment lines)
//   position_m,intensity
//   -1.000000000000e-04,3.141592653590e-01
void write_trace_csv(std::ostream& out, const Trace& trace, const Metadata& metadata = {});
void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                     const Metadata& metadata = {});
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv(const std::filesystem::path& path);

// Interferogram as raw little-endian float64 rows (bottom row first) in
// `<stem>.bin` plus a JSON sidecar `<stem>.json` holding shape and pitch.
// Returns the sidecar path.
std::filesystem::path write_interferogram(const std::filesystem::path& stem,
                                          const Interferogram& image,
                                          const Metadata& metadata = {});
Interferogram read_interferogram(const std::filesystem::path& sidecar);
// One CSV line per row, bottom row first.
void write_interferogram_csv(std::ostream& out, const Interferogram& image);

/// Aligned `key = value` lines.
void write_report(std::ostream& out, const Metadata& report);

}  // namespace nanograting::io
