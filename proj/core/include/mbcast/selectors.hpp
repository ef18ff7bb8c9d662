#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mbc {

// Family of subsets of [N] = {1..N}, doubling as a transmission schedule
// (set index = round index).
struct SetFamily {
  enum class Kind { Ssf, Selector };
  Kind kind = Kind::Ssf;
  uint32_t N = 0;
  uint32_t x = 0;
  uint32_t y = 0;  // selector only
  std::vector<std::vector<uint32_t>> sets;  // sorted ids

  size_t size() const { return sets.size(); }
  bool contains(size_t set_idx, uint32_t id) const;
  void validate() const;

  // mask blocks, built lazily by finalize(); word w bit b covers id w*64+b+1
  std::vector<std::vector<uint64_t>> masks;
  void finalize();
};

// Documented length constants: build_ssf output length <= kSsfLengthConstant *
// x^2 * ceil(log2 N); build_selector output length for y <= x/2 stays within
// kSelectorLengthConstant * x * ceil(log2 N). Checked over the verification
// grid N in {8,16,32,64}, x <= 8 (SSF) and N <= 16, y <= x <= 6 (selector).
inline constexpr double kSsfLengthConstant = 3.0;
inline constexpr double kSelectorLengthConstant = 4.0;

// Deterministic (N,x)-SSF; greedy demand cover at small scale, prime-residue
// classes otherwise. Always satisfies the SSF property.
SetFamily build_ssf(uint32_t N, uint32_t x);

// Prime-residue (N,x)-SSF, valid for any 1 <= x <= N (used directly by
// protocols at sizes where exhaustive verification is infeasible).
SetFamily prime_ssf(uint32_t N, uint32_t x);

// Deterministic greedy (N,x,y)-selector, verified post-hoc; demands must be
// enumerable (intended for N <= 24).
SetFamily build_selector(uint32_t N, uint32_t x, uint32_t y);

// Exhaustive verifiers.
bool verify_ssf(const SetFamily& f, uint32_t N, uint32_t x);
bool verify_selector(const SetFamily& f, uint32_t N, uint32_t x, uint32_t y);

namespace detail {
bool verify_ssf_enum(const SetFamily& f, uint32_t N, uint32_t x);
bool verify_ssf_hitting(const SetFamily& f, uint32_t N, uint32_t x);
}  // namespace detail

// Line-oriented text format, normative for golden tests:
//   SSF N x len        or        SEL N x y len
// then one set per line as sorted ids.
std::string family_to_text(const SetFamily& f);
SetFamily family_from_text(std::istream& in);

}  // namespace mbc
