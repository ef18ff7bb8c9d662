#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mbcast/net.hpp"
#include "mbcast/oracle.hpp"
#include "mbcast/trace.hpp"

namespace mbc {

enum class Knowledge {
  FullTopology,
  NeighborsWithCoords,
  OwnCoordsOnly,
  NeighborIdsOnly,
};

namespace detail {
struct EngineCore;
}

// Per-node window onto the run. Accessors outside the declared knowledge
// variant throw; n, N, k, D and Delta are shared constants in every setting.
class NodeView {
 public:
  StationId id() const;
  uint32_t n() const;
  uint32_t N() const;
  uint32_t k() const;
  uint32_t diameter() const;
  uint32_t max_degree() const;
  const SinrParams& params() const;
  Knowledge knowledge() const;

  double granularity() const;                    // full topology
  Point own_pos() const;                         // any coords variant
  const std::vector<StationId>& neighbor_ids() const;  // full, neighbor variants
  Point neighbor_pos(StationId u) const;         // full, neighbors-with-coords
  const NetworkInstance& topology() const;       // full topology
  uint32_t round() const;                        // only with the global-clock flag

 private:
  friend struct detail::EngineCore;
  const detail::EngineCore* eng_ = nullptr;
  uint32_t idx_ = 0;
};

struct Action {
  bool transmit = false;
  Message msg;
};

class NodeProto {
 public:
  virtual ~NodeProto() = default;
  // called once per round for awake nodes; inbox is the message delivered in
  // the previous round, if any
  virtual Action on_round(const NodeView& view, const std::optional<Message>& inbox) = 0;
  virtual bool done() const = 0;
};

struct ProtocolSpec {
  std::string name;
  Knowledge knowledge = Knowledge::FullTopology;
  bool assume_global_clock = false;
  bool spontaneous = false;  // all nodes start awake (else only sources do)
  std::function<std::unique_ptr<NodeProto>(const NodeView&, const std::vector<uint32_t>& rumors)>
      make_node;
};

struct EngineOptions {
  uint32_t limit = 200000;
  uint32_t c_msg = 8;  // control-bit budget = c_msg * ceil(lg N)
  bool record_trace = true;
};

struct RunResult {
  uint32_t rounds = 0;
  bool completed = false;   // every node holds every rumor
  bool terminated = false;  // every node awake and done before the limit
  std::vector<RoundTrace> trace;
  std::map<StationId, std::set<uint32_t>> rumors;
  std::set<StationId> awake;
};

uint32_t control_bit_budget(uint32_t N, uint32_t c_msg);

RunResult run_protocol(const NetworkInstance& net, const SinrParams& p, const ProtocolSpec& proto,
                       const std::map<StationId, std::vector<uint32_t>>& sources,
                       const EngineOptions& opt = {});

}  // namespace mbc
