#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "mbcast/sinr.hpp"
#include "mbcast/trace.hpp"

namespace mbc::detail {

inline uint32_t id_bits(uint32_t N) {
  return N <= 1 ? 1u : static_cast<uint32_t>(std::bit_width(N - 1));
}

inline uint32_t nonneg_mod(long long v, uint32_t m) {
  long long r = v % static_cast<long long>(m);
  return static_cast<uint32_t>(r < 0 ? r + m : r);
}

// residue slot of a grid box under d-dilution
inline uint32_t box_residue(const GridCoord& c, uint32_t d) {
  return nonneg_mod(c.i, d) * d + nonneg_mod(c.j, d);
}

inline Message ctrl_msg(uint16_t kind, uint32_t N, std::vector<int64_t> fields = {}) {
  Message m;
  m.kind = kind;
  m.fields = std::move(fields);
  m.control_bits = 4 + id_bits(N) * static_cast<uint32_t>(m.fields.size());
  return m;
}

}  // namespace mbc::detail
