#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

// Open disk; all experiments keep the center at the origin.
struct Disk {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  Disk() = default;
  Disk(Complex c, double r);
  explicit Disk(double r) : Disk(Complex{0.0, 0.0}, r) {}

  bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

struct SplitConfiguration {
  std::vector<Complex> inside;
  std::vector<Complex> outside;
};

// Finite multiset of points. Immutable after construction; all
// coordinates are required to be finite.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  explicit PointConfiguration(std::vector<Complex> points);

  const std::vector<Complex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // Exact partition by |z - center| < r0. Throws BoundaryPointError if a
  // point sits within kCoincidenceTol of the circle (a zero-measure event
  // for every model here, so a hit signals a bug or adversarial input).
  SplitConfiguration split(const Disk& disk) const;

 private:
  std::vector<Complex> points_;
};

SplitConfiguration split_configuration(const PointConfiguration& config,
                                       const Disk& disk);

}  // namespace rigidpoints
