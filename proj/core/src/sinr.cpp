#include "mbcast/sinr.hpp"

#include <algorithm>
#include <stdexcept>

namespace mbc {

void SinrParams::validate() const {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  if (!(noise > 0.0)) throw std::invalid_argument("noise must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(power > 0.0)) throw std::invalid_argument("power must be > 0");
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

GridCoord grid_box(const Point& pt, double cell) {
  return GridCoord{static_cast<long long>(std::floor(pt.x / cell)),
                   static_cast<long long>(std::floor(pt.y / cell))};
}

GridCoord pivotal_box(const Point& pt, const SinrParams& p) {
  return grid_box(pt, p.cell());
}

namespace {

// Infimum distance between half-open boxes C(0,0) and C(d1,d2), in cell units.
double offset_inf(int d1, int d2) {
  double gx = std::max(std::abs(d1) - 1, 0);
  double gy = std::max(std::abs(d2) - 1, 0);
  return std::hypot(gx, gy);
}

std::array<std::pair<int, int>, 20> make_dir_set() {
  std::array<std::pair<int, int>, 20> out{};
  size_t idx = 0;
  const double r_in_cells = std::sqrt(2.0);
  for (int d1 = -2; d1 <= 2; ++d1) {
    for (int d2 = -2; d2 <= 2; ++d2) {
      if (d1 == 0 && d2 == 0) continue;
      // Half-open boxes: the infimum is never attained, so distance <= r is
      // achievable iff the infimum is strictly below r.
      if (offset_inf(d1, d2) < r_in_cells - 1e-12) out[idx++] = {d1, d2};
    }
  }
  if (idx != out.size()) throw std::logic_error("dir_set cardinality");
  return out;
}

}  // namespace

const std::array<std::pair<int, int>, 20>& dir_set() {
  static const auto table = make_dir_set();
  return table;
}

}  // namespace mbc
