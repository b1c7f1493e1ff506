#pragma once

// Closed-form reference models written independently of the library.
// Nothing here includes a nanograting header.

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double h = 6.62607015e-34;
inline constexpr double hbar = h / (2.0 * pi);
inline constexpr double k_B = 1.380649e-23;
inline constexpr double amu = 1.66053906660e-27;

// Far-field N-slit intensity, unnormalized, as a function of sin(theta).
inline double fraunhofer(double sin_theta, int n_slits, double period, double slit,
                         double wavelength) {
  const double beta = pi * slit * sin_theta / wavelength;
  const double alpha = pi * period * sin_theta / wavelength;
  const double envelope = beta == 0.0 ? 1.0 : std::pow(std::sin(beta) / beta, 2);
  const double s = std::sin(alpha);
  double array_factor;
  if (std::abs(s) < 1e-12) {
    array_factor = static_cast<double>(n_slits) * n_slits;
  } else {
    array_factor = std::pow(std::sin(n_slits * alpha) / s, 2);
  }
  return envelope * array_factor;
}

// Relative weight of order n under the single-slit envelope.
inline double sinc2_order(int n, double slit, double period) {
  if (n == 0) return 1.0;
  const double x = pi * n * slit / period;
  return std::pow(std::sin(x) / x, 2);
}

inline double wavelength(double mass, double velocity) { return h / (mass * velocity); }

// Order position on a flat screen at distance L2.
inline double order_position(int n, double wavelength, double period, double L2) {
  return L2 * std::tan(std::asin(n * wavelength / period));
}

// Doubly clamped rod: <x^2> = k_B T L^3 / (192 E I), I = pi d^4 / 64.
inline double thermal_sigma(double L, double d, double T, double E) {
  const double I = pi * d * d * d * d / 64.0;
  return std::sqrt(k_B * T * L * L * L / (192.0 * E * I));
}

// Free fall through (0, y0) and (L1, y1), evaluated at L.
inline double arrival_height(double v, double L1, double L, double g, double y0, double y1) {
  const double t1 = L1 / v;
  const double t = L / v;
  // vy chosen so the trajectory passes through (L1, y1).
  const double vy = (y1 - y0 + 0.5 * g * t1 * t1) / t1;
  return y0 + vy * t - 0.5 * g * t * t;
}

struct HotRow {
  double signal;
  double r;
  double g;
  double b;
};

// Parses the verbatim LaTeX rows: "sig& r &g &b & &sig& r ..." three groups per line.
inline std::vector<HotRow> parse_hot_table(const std::string& text) {
  std::vector<HotRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
      if (c == '&') {
        cells.push_back(cell);
        cell.clear();
      } else if (c != '\\') {
        cell.push_back(c);
      }
    }
    cells.push_back(cell);
    std::vector<double> numbers;
    std::vector<bool> blank;
    for (auto& c : cells) {
      std::istringstream cs(c);
      double v;
      if (cs >> v) {
        numbers.push_back(v);
        blank.push_back(false);
      } else {
        numbers.push_back(0.0);
        blank.push_back(true);
      }
    }
    // Groups start at cell 0, 5 and 10 (one spacer column between groups).
    for (std::size_t start : {0u, 5u, 10u}) {
      if (start + 3 >= cells.size() || blank[start]) continue;
      rows.push_back({numbers[start], numbers[start + 1], numbers[start + 2], numbers[start + 3]});
    }
  }
  return rows;
}

// Published bar and molecule masses, kg.
struct MassRow {
  const char* name;
  double mass;
};
inline constexpr std::array<MassRow, 6> table_one = {{
    {"pch2", 8.5e-25},
    {"slg", 7.7e-21},
    {"bilayer", 6.2e-20},
    {"scroll", 6.5e-20},
    {"sinx", 7.5e-18},
    {"biphenyl", 4.4e-20},
}};

}  // namespace oracle
