#include "rigidpoints/geometry.hpp"

#include <cmath>
#include <utility>

namespace rigidpoints {

Disk::Disk(Complex c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("Disk: radius must be positive and finite");
  }
}

PointConfiguration::PointConfiguration(std::vector<Complex> points)
    : points_(std::move(points)) {
  for (const Complex& z : points_) {
    if (!is_finite(z)) {
      throw std::invalid_argument(
          "PointConfiguration: non-finite coordinate");
    }
  }
}

SplitConfiguration PointConfiguration::split(const Disk& disk) const {
  SplitConfiguration out;
  out.inside.reserve(points_.size());
  out.outside.reserve(points_.size());
  for (const Complex& z : points_) {
    const double d = std::abs(z - disk.center);
    if (std::abs(d - disk.radius) < kCoincidenceTol) {
      throw BoundaryPointError("split: point on the boundary circle");
    }
    if (d < disk.radius) {
      out.inside.push_back(z);
    } else {
      out.outside.push_back(z);
    }
  }
  return out;
}

SplitConfiguration split_configuration(const PointConfiguration& config,
                                       const Disk& disk) {
  return config.split(disk);
}

}  // namespace rigidpoints
