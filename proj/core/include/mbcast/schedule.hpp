#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mbcast/sinr.hpp"

namespace mbc {

// Transmission schedule over the id space. A general schedule maps each id to
// a bit sequence of length T. A geometric schedule additionally indexes every
// residue pair (a, b) in [0, delta)^2; a station in box (i, j) follows the row
// for (i mod delta, j mod delta).
struct Schedule {
  enum class Kind { General, Geometric };
  Kind kind = Kind::General;
  uint32_t T = 0;
  uint32_t delta = 0;  // geometric only
  // General: rows[id][0] is the bit sequence.
  // Geometric: rows[id][a * delta + b] is the bit sequence for residue (a, b).
  std::map<uint32_t, std::vector<std::vector<uint8_t>>> rows;

  void validate() const;
  bool bit(uint32_t id, uint32_t t) const;                          // general
  bool bit(uint32_t id, uint32_t a, uint32_t b, uint32_t t) const;  // geometric
};

// Expands each round of a general schedule into delta^2 sub-rounds: bit
// (t-1)*delta^2 + a*delta + b of the result row (id, a, b) equals bit t of the
// input row for id (t counted from 1).
Schedule dilute(const Schedule& s, uint32_t delta);

// Residual interference bound when one station per box of a d-diluted set of
// pivotal boxes transmits: sum over rings of 8*(i+1)*(i*d*cell)^(-alpha).
double dilution_interference_bound(uint32_t d, const SinrParams& p);

// Smallest d >= 2 whose ring-sum bound stays below epsilon*beta*noise.
uint32_t safe_dilution_constant(const SinrParams& p);

}  // namespace mbc
