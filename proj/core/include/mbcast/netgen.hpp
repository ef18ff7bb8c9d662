#pragma once

#include <cstdint>
#include <vector>

#include "mbcast/net.hpp"
#include "mbcast/oracle.hpp"

namespace mbc {

struct Metrics {
  uint32_t D = 0;      // hop diameter of the communication graph
  uint32_t Delta = 0;  // maximum degree
  double g = 0.0;      // range / minimum pairwise distance
  bool connected = false;
};

Metrics compute_metrics(const NetworkInstance& net, const SinrParams& p);

// Deterministic-by-seed rejection sampling in a [0, side]^2 area with pairwise
// separation >= min_sep; regenerates until connected. N = 0 picks the smallest
// power of two >= 2n. Keeps every pairwise distance away from the reception
// threshold r by a relative margin of 1e-9 so boundary cases never arise.
NetworkInstance gen_random(uint32_t n, double side, double min_sep, uint64_t seed,
                           const SinrParams& p, uint32_t N = 0);

// Three-layer single-rumor worst case: source s at the origin, a row of Delta
// stations at height gamma, and one top station w_j reachable only through the
// j-th row station (j in [0, Delta)). Structural properties are verified with
// the reception oracle at generation time; requires beta == 1.
NetworkInstance gen_lower_bound_family(uint32_t Delta, uint32_t j, const SinrParams& p);

// Number of simultaneous row transmitters that provably silences w_j.
uint32_t blocking_count(const SinrParams& p);

// (D-1)/2 shifted copies chained so each copy's source is the previous copy's
// top station; js supplies the per-copy j choice. D odd, >= 3.
NetworkInstance chain_networks(uint32_t Delta, uint32_t D, const std::vector<uint32_t>& js,
                               const SinrParams& p);

struct ProtocolSpec;

struct AdversaryResult {
  uint32_t forced_rounds = 0;  // first round a surviving top station hears anything
  bool informed = false;       // false if no survivor was reached within the limit
  std::vector<uint32_t> family_sizes;  // surviving candidates after each round
};

// Plays the candidate-elimination game against a deterministic protocol run on
// the single-rumor family: the protocol is executed on every member, the round
// histories of the bottom two layers are checked to agree on surviving members,
// and whenever at most blocking_count(p) - 1 row stations transmit, the
// members indexed by the transmitters are discarded. Reports the first round
// in which a surviving top station receives any message.
AdversaryResult adversary_run(const ProtocolSpec& proto, uint32_t Delta, const SinrParams& p,
                              uint32_t limit);

}  // namespace mbc
