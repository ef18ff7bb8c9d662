#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <utility>

namespace mbc {

// Physical model constants plus the derived range/grid geometry.
struct SinrParams {
  double alpha = 3.0;    // path-loss exponent, > 2
  double beta = 1.0;     // SINR threshold, >= 1
  double noise = 1.0;    // ambient noise power, > 0
  double epsilon = 0.5;  // signal sensitivity margin, > 0
  double power = 1.0;    // uniform transmission power, > 0

  // Maximum distance at which a solo transmission is received.
  double range() const {
    return std::pow(power / ((1.0 + epsilon) * beta * noise), 1.0 / alpha);
  }
  // Side of a pivotal grid cell; any two points of one cell are within range.
  double cell() const { return range() / std::sqrt(2.0); }

  void validate() const;  // throws std::invalid_argument on a bad constant
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double dist(const Point& a, const Point& b);

// Integer coordinates of the half-open grid box [c*i, c*(i+1)) x [c*j, c*(j+1)).
struct GridCoord {
  long long i = 0;
  long long j = 0;
  auto operator<=>(const GridCoord&) const = default;
};

// Box of the pivotal grid containing pt (left/bottom sides included).
GridCoord pivotal_box(const Point& pt, const SinrParams& p);
GridCoord grid_box(const Point& pt, double cell);

// The 20 box offsets at which two pivotal boxes can hold points within range.
const std::array<std::pair<int, int>, 20>& dir_set();

}  // namespace mbc
