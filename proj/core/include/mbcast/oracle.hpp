#pragma once

#include <vector>

#include "mbcast/net.hpp"

namespace mbc {

// Ids of the stations transmitting concurrently in one round (sorted, unique).
using TransmissionSet = std::vector<StationId>;

// Ratio of the sender's signal at the receiver to noise plus interference.
double sinr_value(StationId sender, StationId receiver, const TransmissionSet& txset,
                  const NetworkInstance& net, const SinrParams& p);

// True iff sender transmits, receiver listens, the solo signal clears the
// (1+epsilon)*beta*noise floor and the SINR clears beta. Both closed (>=).
bool receives(StationId sender, StationId receiver, const TransmissionSet& txset,
              const NetworkInstance& net, const SinrParams& p);

struct Graph {
  std::vector<StationId> ids;             // by station index of the instance
  std::vector<std::vector<uint32_t>> adj; // neighbor indices, sorted
  bool connected() const;
};

// Undirected graph with an edge wherever a solo transmission is received.
Graph communication_graph(const NetworkInstance& net, const SinrParams& p);

}  // namespace mbc
