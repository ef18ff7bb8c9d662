#include <stdexcept>

#include "mbcast/protocols.hpp"

namespace mbc {

namespace {

struct FloodNode : NodeProto {
  std::optional<uint32_t> rumor;

  FloodNode(const std::vector<uint32_t>& rumors) {
    if (!rumors.empty()) rumor = rumors[0];
  }

  Action on_round(const NodeView&, const std::optional<Message>& inbox) override {
    if (!rumor && inbox && inbox->rumor) rumor = inbox->rumor;
    if (!rumor) return {};
    Action a;
    a.transmit = true;
    a.msg.kind = kPush;
    a.msg.rumor = rumor;
    a.msg.control_bits = 4;
    return a;
  }

  bool done() const override { return false; }
};

}  // namespace

ProtocolSpec naive_flooding() {
  ProtocolSpec s;
  s.name = "naive-flooding";
  s.knowledge = Knowledge::NeighborIdsOnly;
  s.make_node = [](const NodeView&, const std::vector<uint32_t>& rumors) {
    return std::make_unique<FloodNode>(rumors);
  };
  return s;
}

std::vector<ProtocolSpec> protocol_suite() {
  return {central_gran_independent(), central_gran_dependent(), local_multicast(),
          general_multicast(), btd_multicast()};
}

ProtocolSpec protocol_by_name(const std::string& name) {
  for (auto& s : protocol_suite())
    if (s.name == name) return s;
  if (name == "btd-traversals") return btd_traversals();
  if (name == "naive-flooding") return naive_flooding();
  throw std::invalid_argument("unknown protocol: " + name);
}

}  // namespace mbc
