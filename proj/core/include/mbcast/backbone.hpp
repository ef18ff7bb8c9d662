#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mbcast/net.hpp"
#include "mbcast/oracle.hpp"

namespace mbc {

using Dir = std::pair<int, int>;

// Connected dominating set: one leader per nonempty pivotal box plus
// directional sender/receiver helpers towards each reachable neighbor box.
struct BackboneStructure {
  std::map<GridCoord, StationId> leaders;
  std::map<std::pair<GridCoord, Dir>, StationId> senders;
  std::map<std::pair<GridCoord, Dir>, StationId> receivers;
  std::set<StationId> members;                          // H
  std::map<GridCoord, std::vector<StationId>> by_box;   // H intersect C, ascending
};

// Pure local computation from shared topology; consumes no rounds.
BackboneStructure compute_backbone(const NetworkInstance& net, const SinrParams& p);

// Checks the structural invariants: domination, connectivity of H (when the
// graph is connected), per-box member bound 1 + 2*|DIR|, sender/receiver
// adjacency. Returns an error description, empty if all hold.
std::string verify_backbone(const BackboneStructure& bb, const NetworkInstance& net,
                            const SinrParams& p);

}  // namespace mbc
