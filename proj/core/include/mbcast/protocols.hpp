#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbcast/backbone.hpp"
#include "mbcast/engine.hpp"

namespace mbc {

// message kinds shared across the protocol suite
enum MsgKind : uint16_t {
  kElect = 1,
  kGatherStart,
  kGatherChild,
  kGatherRumor,
  kGatherEnd,
  kWakeRumor,
  kPush,
  kRoster,     // neighborhood / participation announcements
  kNotify,     // sender / receiver designation
  kToken,
  kCheck,
  kReply,
  kTokenEcho,  // part-two retransmission of the smallest received token
  kWalk,       // Euler-walk token (counting / synchronizing)
  kFreeze,     // leaf rumor upload during the first walk
};

// Full-topology pipelines: diluted in-box election, tree gather, box wake,
// then rumor pipelining over the precomputed backbone.
ProtocolSpec central_gran_independent();
ProtocolSpec central_gran_dependent();

// Neighbors-with-coordinates pipeline: wave of box activations with roster
// elections, then gather + backbone pipelining.
ProtocolSpec local_multicast();

// Own-coordinates pipeline: source thinning, neighborhood learning by global
// id sweeps, distributed backbone designation, then pipelining.
ProtocolSpec general_multicast();

// Neighbor-ids-only pipeline: token game spanning a tree, then rumor
// propagation along it.
ProtocolSpec btd_multicast();

// The tree-construction part alone (elimination, token traversal, two Euler
// walks, synchronized stop); used by the structural test suites.
ProtocolSpec btd_traversals();

// Fixed length of one token-conflict invocation (three id sweeps).
uint32_t smallest_token_rounds(uint32_t N);

// Reference foil, not part of the suite: every awake rumor holder transmits
// every round; saturates any row of mutual neighbors and never terminates.
ProtocolSpec naive_flooding();

std::vector<ProtocolSpec> protocol_suite();
ProtocolSpec protocol_by_name(const std::string& name);

}  // namespace mbc
