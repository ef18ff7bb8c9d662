#include <set>
#include <sstream>

#include "doctest.h"
#include "mbcast/engine.hpp"
#include "mbcast/netgen.hpp"

using namespace mbc;

namespace {

// transmits its first rumor every round; done once it holds `want` rumors
struct FloodProto : NodeProto {
  std::set<uint32_t> have;
  uint32_t want;
  bool stamp_round = false;
  FloodProto(const std::vector<uint32_t>& rumors, uint32_t want, bool stamp = false)
      : have(rumors.begin(), rumors.end()), want(want), stamp_round(stamp) {}
  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    if (inbox && inbox->rumor) have.insert(*inbox->rumor);
    if (have.empty()) return {};
    Action a;
    a.transmit = true;
    a.msg.rumor = *have.begin();
    if (stamp_round) {
      a.msg.fields = {static_cast<int64_t>(view.round())};
      a.msg.control_bits = 32;
    }
    return a;
  }
  bool done() const override { return have.size() >= want; }
};

ProtocolSpec flood_spec(uint32_t want, bool stamp = false) {
  ProtocolSpec s;
  s.name = "flood";
  s.knowledge = Knowledge::NeighborIdsOnly;
  s.assume_global_clock = stamp;
  s.make_node = [want, stamp](const NodeView&, const std::vector<uint32_t>& rumors) {
    return std::make_unique<FloodProto>(rumors, want, stamp);
  };
  return s;
}

// collision-free spread: node v transmits only in global rounds with
// round % N == v-1, cycling through held rumors across sweeps
struct TdmaProto : NodeProto {
  std::set<uint32_t> have;
  uint32_t want;
  TdmaProto(const std::vector<uint32_t>& rumors, uint32_t want)
      : have(rumors.begin(), rumors.end()), want(want) {}
  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    if (inbox && inbox->rumor) have.insert(*inbox->rumor);
    uint32_t t = view.round();
    if (have.empty() || t % view.N() != view.id() - 1) return {};
    Action a;
    a.transmit = true;
    auto it = have.begin();
    std::advance(it, (t / view.N()) % have.size());
    a.msg.rumor = *it;
    a.msg.fields = {static_cast<int64_t>(t)};
    a.msg.control_bits = 32;
    return a;
  }
  bool done() const override { return have.size() >= want; }
};

ProtocolSpec tdma_spec(uint32_t want) {
  ProtocolSpec s;
  s.name = "tdma";
  s.knowledge = Knowledge::NeighborIdsOnly;
  s.assume_global_clock = true;
  s.make_node = [want](const NodeView&, const std::vector<uint32_t>& rumors) {
    return std::make_unique<TdmaProto>(rumors, want);
  };
  return s;
}

struct IdleProto : NodeProto {
  Action on_round(const NodeView&, const std::optional<Message>&) override { return {}; }
  bool done() const override { return true; }
};

}  // namespace

TEST_CASE("single node completes in zero rounds") {
  NetworkInstance net;
  net.N = 8;
  net.stations = {{3, {0.0, 0.0}}};
  ProtocolSpec s;
  s.name = "idle";
  s.make_node = [](const NodeView&, const std::vector<uint32_t>&) {
    return std::make_unique<IdleProto>();
  };
  auto res = run_protocol(net, SinrParams{}, s, {{3, {1}}});
  CHECK(res.rounds == 0);
  CHECK(res.completed);
  CHECK(res.terminated);
}

TEST_CASE("solo transmitter wakes and informs a box mate") {
  SinrParams p;
  NetworkInstance net;
  net.N = 8;
  net.stations = {{1, {0.0, 0.0}}, {2, {p.cell() / 2, 0.0}}};
  EngineOptions opt;
  opt.limit = 5;
  auto res = run_protocol(net, p, flood_spec(1), {{1, {42}}}, opt);
  CHECK(res.completed);
  REQUIRE(!res.trace.empty());
  CHECK(res.trace[0].transmitters == TransmissionSet{1});
  REQUIRE(res.trace[0].deliveries.size() == 1);
  CHECK(res.trace[0].deliveries[0].receiver == 2);
  CHECK(res.trace[0].wakeups == std::vector<StationId>{2});
  CHECK(res.rumors.at(2) == std::set<uint32_t>{42});
}

TEST_CASE("concurrent row sources never inform the top station") {
  SinrParams p;
  auto net = gen_lower_bound_family(8, 3, p);
  const uint32_t c1 = blocking_count(p);
  std::map<StationId, std::vector<uint32_t>> sources;
  for (uint32_t i = 0; i < c1; ++i) sources[2 + i] = {7};
  EngineOptions opt;
  opt.limit = 200;
  auto res = run_protocol(net, p, flood_spec(1), sources, opt);
  CHECK(!res.completed);
  CHECK(res.rumors.at(10).empty());  // w never hears anything
  for (const auto& rt : res.trace)
    for (const auto& d : rt.deliveries) CHECK(d.receiver != 10);
}

TEST_CASE("control-bit budget and rumor conservation are enforced") {
  SinrParams p;
  NetworkInstance net;
  net.N = 8;
  net.stations = {{1, {0.0, 0.0}}, {2, {p.cell() / 2, 0.0}}};

  ProtocolSpec fat;
  fat.name = "fat";
  fat.make_node = [](const NodeView& v, const std::vector<uint32_t>&) {
    struct P : NodeProto {
      uint32_t budget;
      explicit P(uint32_t b) : budget(b) {}
      Action on_round(const NodeView&, const std::optional<Message>&) override {
        Action a;
        a.transmit = true;
        a.msg.control_bits = budget + 1;
        return a;
      }
      bool done() const override { return false; }
    };
    return std::make_unique<P>(control_bit_budget(v.N(), 8));
  };
  CHECK_THROWS_AS(run_protocol(net, p, fat, {{1, {1}}}), std::runtime_error);

  ProtocolSpec liar;
  liar.name = "liar";
  liar.make_node = [](const NodeView&, const std::vector<uint32_t>&) {
    struct P : NodeProto {
      Action on_round(const NodeView&, const std::optional<Message>&) override {
        Action a;
        a.transmit = true;
        a.msg.rumor = 99;  // never held
        return a;
      }
      bool done() const override { return false; }
    };
    return std::make_unique<P>();
  };
  CHECK_THROWS_AS(run_protocol(net, p, liar, {{1, {1}}}), std::logic_error);
}

TEST_CASE("knowledge gate blocks out-of-variant reads") {
  SinrParams p;
  NetworkInstance net;
  net.N = 8;
  net.stations = {{1, {0.0, 0.0}}, {2, {p.cell() / 2, 0.0}}};

  auto make_spec = [](Knowledge kn, auto probe) {
    ProtocolSpec s;
    s.name = "probe";
    s.knowledge = kn;
    s.make_node = [probe](const NodeView&, const std::vector<uint32_t>&) {
      struct P : NodeProto {
        std::function<void(const NodeView&)> probe;
        explicit P(std::function<void(const NodeView&)> f) : probe(std::move(f)) {}
        Action on_round(const NodeView& v, const std::optional<Message>&) override {
          probe(v);
          return {};
        }
        bool done() const override { return false; }
      };
      return std::make_unique<P>(probe);
    };
    return s;
  };

  auto s1 = make_spec(Knowledge::OwnCoordsOnly, [](const NodeView& v) { v.neighbor_ids(); });
  CHECK_THROWS_AS(run_protocol(net, p, s1, {{1, {1}}}), std::logic_error);
  auto s2 = make_spec(Knowledge::NeighborIdsOnly, [](const NodeView& v) { v.own_pos(); });
  CHECK_THROWS_AS(run_protocol(net, p, s2, {{1, {1}}}), std::logic_error);
  auto s3 = make_spec(Knowledge::NeighborsWithCoords, [](const NodeView& v) { v.topology(); });
  CHECK_THROWS_AS(run_protocol(net, p, s3, {{1, {1}}}), std::logic_error);
  auto s4 = make_spec(Knowledge::FullTopology, [](const NodeView& v) { v.round(); });
  CHECK_THROWS_AS(run_protocol(net, p, s4, {{1, {1}}}), std::logic_error);

  // shared constants are always readable
  auto s5 = make_spec(Knowledge::NeighborIdsOnly, [](const NodeView& v) {
    (void)v.n();
    (void)v.N();
    (void)v.k();
    (void)v.diameter();
    (void)v.max_degree();
  });
  EngineOptions opt;
  opt.limit = 2;
  CHECK_NOTHROW(run_protocol(net, p, s5, {{1, {1}}}, opt));
}

TEST_CASE("determinism, trace round trip, replay audit") {
  SinrParams p;
  auto net = gen_random(25, 1.6, p.range() / 10, 77, p);
  std::map<StationId, std::vector<uint32_t>> sources{{net.stations[0].id, {1}},
                                                     {net.stations[5].id, {2}}};
  EngineOptions opt;
  opt.limit = 20000;
  auto a = run_protocol(net, p, tdma_spec(2), sources, opt);
  auto b = run_protocol(net, p, tdma_spec(2), sources, opt);
  CHECK(a.completed);
  CHECK(trace_to_text(a.trace) == trace_to_text(b.trace));

  std::istringstream in(trace_to_text(a.trace));
  auto back = read_trace(in);
  CHECK(back == a.trace);

  CHECK(audit_trace(net, p, a.trace).empty());
  auto bad = a.trace;
  bool tampered = false;
  for (auto& rt : bad)
    if (!rt.deliveries.empty() && !tampered) {
      rt.deliveries.pop_back();
      tampered = true;
    }
  REQUIRE(tampered);
  CHECK(!audit_trace(net, p, bad).empty());
}

TEST_CASE("wakeup precedes first transmission and piggybacked counter matches") {
  SinrParams p;
  auto net = gen_random(20, 1.4, p.range() / 8, 5, p);
  std::map<StationId, std::vector<uint32_t>> sources{{net.stations[2].id, {9}}};
  EngineOptions opt;
  opt.limit = 20000;
  auto res = run_protocol(net, p, tdma_spec(1), sources, opt);
  CHECK(res.completed);

  std::map<StationId, uint32_t> wake_round, first_tx;
  for (const auto& rt : res.trace) {
    for (StationId w : rt.wakeups) wake_round.emplace(w, rt.round);
    for (StationId t : rt.transmitters) first_tx.emplace(t, rt.round);
    for (const auto& d : rt.deliveries) {
      REQUIRE(d.msg.fields.size() == 1);
      CHECK(d.msg.fields[0] == static_cast<int64_t>(rt.round));
    }
  }
  for (const auto& [id, w] : wake_round) {
    auto it = first_tx.find(id);
    if (it != first_tx.end()) CHECK(it->second > w);
  }
  // awake set only grows and deliveries are half-duplex
  for (const auto& rt : res.trace)
    for (const auto& d : rt.deliveries)
      CHECK(std::find(rt.transmitters.begin(), rt.transmitters.end(), d.receiver) ==
            rt.transmitters.end());
}
