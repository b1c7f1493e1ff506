#pragma once

#include <cstddef>
#include <vector>

namespace nanograting {

// 2D detector image. Row index iy grows with height (up-positive y axis);
// pixel centres at (x_min + ix*pitch_x, y_min + iy*pitch_y). Row-major.
class Interferogram {
 public:
  Interferogram(std::size_t nx, std::size_t ny, double x_min, double y_min, double pitch_x,
                double pitch_y);
  Interferogram(std::size_t nx, std::size_t ny, double x_min, double y_min, double pitch_x,
                double pitch_y, std::vector<double> data);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double pitch_x() const { return pitch_x_; }
  double pitch_y() const { return pitch_y_; }
  double x(std::size_t ix) const { return x_min_ + static_cast<double>(ix) * pitch_x_; }
  double y(std::size_t iy) const { return y_min_ + static_cast<double>(iy) * pitch_y_; }

  double& at(std::size_t ix, std::size_t iy) { return data_[iy * nx_ + ix]; }
  double at(std::size_t ix, std::size_t iy) const { return data_[iy * nx_ + ix]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double sum() const;
  double max() const;
  bool same_shape(const Interferogram& other) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double x_min_;
  double y_min_;
  double pitch_x_;
  double pitch_y_;
  std::vector<double> data_;
};

/// Separable Gaussian blur (unit-area kernels truncated at +-5 sigma, zero-padded edges).
Interferogram gaussian_blur(const Interferogram& image, double sigma_x, double sigma_y);

}  // namespace nanograting
