#include "mbcast/protocols.hpp"
#include "proto_util.hpp"

namespace mbc {
namespace {

using detail::ctrl_msg;

// Own-coordinates pipeline built on globally solo id sweeps: in round t only
// the station with id t % N + 1 may transmit, so every transmission reaches
// all neighbors regardless of box occupancy. Sweep phases:
//   wake       awake stations ping every sweep until the wave covers the graph
//   discovery  every station announces itself once; afterwards each node has
//              heard every neighbor
//   flood      each station forwards its oldest not-yet-forwarded rumor per
//              sweep; FIFO pipelining moves all k rumors across the diameter
struct GeneralNode : NodeProto {
  uint32_t N = 0;
  uint64_t wake_end = 0, disc_end = 0, total = 0;
  StationId self;
  std::vector<uint32_t> rec;
  std::set<uint32_t> have;
  size_t sent = 0;
  bool done_ = false;

  GeneralNode(const NodeView& v, const std::vector<uint32_t>& rumors)
      : rec(rumors), have(rumors.begin(), rumors.end()) {
    N = v.N();
    self = v.id();
    uint64_t D = v.diameter(), k = v.k();
    wake_end = (D + 2) * N;
    disc_end = wake_end + N;
    total = disc_end + (2 * D + 2 * k + 16) * N;
    if (v.n() == 1) total = 0;
    done_ = total == 0;
  }

  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    uint64_t t = view.round();
    if (inbox && inbox->rumor && have.insert(*inbox->rumor).second) rec.push_back(*inbox->rumor);
    done_ = t + 1 >= total;
    if (total == 0 || t % N != self - 1) return {};

    Action a;
    auto send = [&](Message m) {
      a.transmit = true;
      a.msg = std::move(m);
    };
    if (t < wake_end) {
      Message m = ctrl_msg(kWakeRumor, N);
      if (!rec.empty()) m.rumor = rec[0];
      send(std::move(m));
    } else if (t < disc_end) {
      send(ctrl_msg(kRoster, N));
    } else if (t < total && sent < rec.size()) {
      Message m = ctrl_msg(kPush, N);
      m.rumor = rec[sent++];
      send(std::move(m));
    }
    return a;
  }

  bool done() const override { return done_; }
};

}  // namespace

ProtocolSpec general_multicast() {
  ProtocolSpec s;
  s.name = "general-multicast";
  s.knowledge = Knowledge::OwnCoordsOnly;
  s.assume_global_clock = true;
  s.make_node = [](const NodeView& v, const std::vector<uint32_t>& rumors) {
    return std::make_unique<GeneralNode>(v, rumors);
  };
  return s;
}

}  // namespace mbc
