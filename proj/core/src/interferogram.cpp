#include "nanograting/interferogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nanograting/errors.hpp"

namespace nanograting {

Interferogram::Interferogram(std::size_t nx, std::size_t ny, double x_min, double y_min,
                             double pitch_x, double pitch_y)
    : Interferogram(nx, ny, x_min, y_min, pitch_x, pitch_y, std::vector<double>(nx * ny, 0.0)) {}

Interferogram::Interferogram(std::size_t nx, std::size_t ny, double x_min, double y_min,
                             double pitch_x, double pitch_y, std::vector<double> data)
    : nx_(nx), ny_(ny), x_min_(x_min), y_min_(y_min), pitch_x_(pitch_x), pitch_y_(pitch_y),
      data_(std::move(data)) {
  if (nx_ == 0 || ny_ == 0) throw DomainError("interferogram dimensions must be positive");
  if (!(pitch_x_ > 0.0) || !(pitch_y_ > 0.0)) throw DomainError("pixel pitch must be positive");
  if (data_.size() != nx_ * ny_) throw DomainError("interferogram data size mismatch");
  for (double v : data_) {
    if (!(v >= 0.0)) throw DomainError("interferogram intensities must be non-negative");
  }
}

double Interferogram::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Interferogram::max() const { return *std::max_element(data_.begin(), data_.end()); }

bool Interferogram::same_shape(const Interferogram& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_;
}

namespace {

std::vector<double> gaussian_kernel(double sigma, double pitch) {
  if (sigma == 0.0) return {1.0};
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(5.0 * sigma / pitch));
  std::vector<double> k(static_cast<std::size_t>(2 * half + 1));
  for (std::ptrdiff_t j = -half; j <= half; ++j) {
    const double x = static_cast<double>(j) * pitch / sigma;
    k[static_cast<std::size_t>(j + half)] = std::exp(-0.5 * x * x);
  }
  const double norm = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& w : k) w /= norm;
  return k;
}

// Convolves `n` samples spaced `stride` apart starting at `base`.
void convolve_line(std::vector<double>& data, std::size_t base, std::size_t stride, std::size_t n,
                   const std::vector<double>& kernel, std::vector<double>& scratch) {
  const auto half = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const auto len = static_cast<std::ptrdiff_t>(n);
  scratch.assign(n, 0.0);
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, i + half);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      acc += kernel[static_cast<std::size_t>(i - j + half)] *
             data[base + static_cast<std::size_t>(j) * stride];
    }
    scratch[static_cast<std::size_t>(i)] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) data[base + i * stride] = scratch[i];
}

}  // namespace

Interferogram gaussian_blur(const Interferogram& image, double sigma_x, double sigma_y) {
  if (!(sigma_x >= 0.0) || !(sigma_y >= 0.0)) throw DomainError("blur sigma must be non-negative");
  Interferogram out = image;
  auto& data = out.data();
  std::vector<double> scratch;
  const auto kx = gaussian_kernel(sigma_x, image.pitch_x());
  const auto ky = gaussian_kernel(sigma_y, image.pitch_y());
  if (kx.size() > 1) {
    for (std::size_t iy = 0; iy < image.ny(); ++iy) {
      convolve_line(data, iy * image.nx(), 1, image.nx(), kx, scratch);
    }
  }
  if (ky.size() > 1) {
    for (std::size_t ix = 0; ix < image.nx(); ++ix) {
      convolve_line(data, ix, image.nx(), image.ny(), ky, scratch);
    }
  }
  return out;
}

}  // namespace nanograting
