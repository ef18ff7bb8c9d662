#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "mbcast/netgen.hpp"
#include "mbcast/protocols.hpp"

using namespace mbc;

namespace {

std::map<StationId, std::vector<uint32_t>> pick_sources(const NetworkInstance& net, uint32_t k,
                                                        uint64_t seed) {
  std::vector<StationId> ids;
  for (const auto& st : net.stations) ids.push_back(st.id);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<StationId, std::vector<uint32_t>> src;
  for (uint32_t i = 0; i < k && i < ids.size(); ++i) src[ids[i]] = {i + 1};
  return src;
}

void expect_full_dissemination(const ProtocolSpec& proto, const NetworkInstance& net,
                               const SinrParams& p,
                               const std::map<StationId, std::vector<uint32_t>>& src) {
  EngineOptions opt;
  opt.limit = 2000000;
  auto res = run_protocol(net, p, proto, src, opt);
  INFO(proto.name, " n=", net.n());
  CHECK(res.completed);
  CHECK(res.terminated);
  CHECK(audit_trace(net, p, res.trace).empty());
}

}  // namespace

TEST_CASE("central variants: single node, zero rounds") {
  SinrParams p;
  NetworkInstance net;
  net.N = 4;
  net.stations = {{2, {0.3, 0.4}}};
  for (auto& proto : {central_gran_independent(), central_gran_dependent()}) {
    auto res = run_protocol(net, p, proto, {{2, {1}}});
    CHECK(res.rounds == 0);
    CHECK(res.completed);
    CHECK(res.terminated);
  }
}

TEST_CASE("central variants: random instances, several sources") {
  SinrParams p;
  struct Cfg {
    uint32_t n;
    double side;
    uint32_t k;
    uint64_t seed;
  };
  for (auto [n, side, k, seed] : {Cfg{5, 0.8, 1, 3}, Cfg{20, 1.5, 4, 9}, Cfg{60, 2.5, 7, 21}}) {
    auto net = gen_random(n, side, p.range() / 10, seed, p);
    auto src = pick_sources(net, k, seed * 7 + 1);
    expect_full_dissemination(central_gran_independent(), net, p, src);
    expect_full_dissemination(central_gran_dependent(), net, p, src);
  }
}

TEST_CASE("central variants: multi-hop chain instance") {
  SinrParams p;
  auto net = chain_networks(6, 5, {1, 2}, p);
  auto src = pick_sources(net, 3, 5);
  expect_full_dissemination(central_gran_independent(), net, p, src);
  expect_full_dissemination(central_gran_dependent(), net, p, src);
}

TEST_CASE("one source holding several rumors still completes") {
  SinrParams p;
  auto net = gen_random(15, 1.2, p.range() / 9, 13, p);
  std::map<StationId, std::vector<uint32_t>> src{{net.stations[3].id, {4, 8}}};
  expect_full_dissemination(central_gran_independent(), net, p, src);
  expect_full_dissemination(central_gran_dependent(), net, p, src);
}

TEST_CASE("local multicast: random instances and chain") {
  SinrParams p;
  struct Cfg {
    uint32_t n;
    double side;
    uint32_t k;
    uint64_t seed;
  };
  for (auto [n, side, k, seed] : {Cfg{5, 0.8, 1, 3}, Cfg{20, 1.5, 4, 9}, Cfg{40, 2.2, 6, 21}}) {
    auto net = gen_random(n, side, p.range() / 10, seed, p);
    expect_full_dissemination(local_multicast(), net, p, pick_sources(net, k, seed * 7 + 1));
  }
  auto chain = chain_networks(5, 5, {1, 2}, p);
  expect_full_dissemination(local_multicast(), chain, p, pick_sources(chain, 2, 4));
}

TEST_CASE("local multicast designations match the centralized backbone") {
  SinrParams p;
  NetworkInstance net;
  net.N = 16;
  net.stations = {{3, {p.cell() * 0.9, 0.2 * p.cell()}},
                  {7, {p.cell() * 1.1, 0.2 * p.cell()}}};
  EngineOptions opt;
  opt.limit = 1000000;
  auto res = run_protocol(net, p, local_multicast(), {{3, {5}}}, opt);
  REQUIRE(res.completed);

  // sender -> named receiver pairs announced on the air equal the
  // centrally computed directional designations
  std::set<std::pair<StationId, StationId>> named;
  for (const auto& rt : res.trace)
    for (const auto& dv : rt.deliveries)
      if (dv.msg.kind == kNotify && !dv.msg.fields.empty())
        named.insert({dv.msg.sender, static_cast<StationId>(dv.msg.fields[0])});
  auto bb = compute_backbone(net, p);
  std::set<std::pair<StationId, StationId>> expect;
  for (auto& [key, sid] : bb.senders) {
    auto [c, dir] = key;
    GridCoord tgt{c.i + dir.first, c.j + dir.second};
    expect.insert({sid, bb.receivers.at({tgt, {-dir.first, -dir.second}})});
  }
  CHECK(named == expect);
}

TEST_CASE("general multicast: random instances and chain") {
  SinrParams p;
  struct Cfg {
    uint32_t n;
    double side;
    uint32_t k;
    uint64_t seed;
  };
  for (auto [n, side, k, seed] : {Cfg{5, 0.8, 1, 3}, Cfg{20, 1.5, 4, 9}, Cfg{40, 2.2, 6, 21}}) {
    auto net = gen_random(n, side, p.range() / 10, seed, p);
    expect_full_dissemination(general_multicast(), net, p, pick_sources(net, k, seed * 7 + 1));
  }
  auto chain = chain_networks(5, 7, {0, 3, 1}, p);
  expect_full_dissemination(general_multicast(), chain, p, pick_sources(chain, 3, 8));
}

TEST_CASE("general multicast discovery sweep reveals the whole graph") {
  SinrParams p;
  auto net = gen_random(18, 1.4, p.range() / 9, 31, p);
  auto src = pick_sources(net, 2, 6);
  EngineOptions opt;
  opt.limit = 1000000;
  auto res = run_protocol(net, p, general_multicast(), src, opt);
  REQUIRE(res.completed);

  auto m = compute_metrics(net, p);
  uint64_t disc_lo = static_cast<uint64_t>(m.D + 2) * net.N;
  uint64_t disc_hi = disc_lo + net.N;
  std::set<std::pair<StationId, StationId>> seen;
  for (const auto& rt : res.trace)
    if (rt.round >= disc_lo && rt.round < disc_hi)
      for (const auto& dv : rt.deliveries) seen.insert({dv.sender, dv.receiver});

  auto g = communication_graph(net, p);
  std::set<std::pair<StationId, StationId>> edges;
  for (size_t i = 0; i < g.ids.size(); ++i)
    for (uint32_t j : g.adj[i]) edges.insert({g.ids[i], g.ids[j]});
  CHECK(seen == edges);
}

TEST_CASE("btd multicast: random instances and chain") {
  SinrParams p;
  struct Cfg {
    uint32_t n;
    double side;
    uint32_t k;
    uint64_t seed;
  };
  for (auto [n, side, k, seed] : {Cfg{5, 0.8, 1, 3}, Cfg{12, 1.2, 3, 9}, Cfg{25, 1.8, 5, 21}}) {
    auto net = gen_random(n, side, p.range() / 10, seed, p);
    expect_full_dissemination(btd_multicast(), net, p, pick_sources(net, k, seed * 7 + 1));
  }
  auto chain = chain_networks(4, 5, {1, 2}, p);
  expect_full_dissemination(btd_multicast(), chain, p, pick_sources(chain, 2, 4));
}

TEST_CASE("btd traversals: euler walks are exact and stop together") {
  SinrParams p;
  auto net = gen_random(16, 1.4, p.range() / 9, 17, p);
  auto src = pick_sources(net, 3, 11);
  EngineOptions opt;
  opt.limit = 2000000;
  auto res = run_protocol(net, p, btd_traversals(), src, opt);
  REQUIRE(res.completed == false);  // traversal part spreads no rumors
  REQUIRE(res.terminated);
  CHECK(audit_trace(net, p, res.trace).empty());

  // the walk rounds are exactly the single-transmitter kWalk rounds; split
  // them into maximal runs and check each walk moves exactly 2n-2 times
  std::vector<uint64_t> walk_rounds;
  for (const auto& rt : res.trace)
    if (rt.transmitters.size() == 1 && !rt.deliveries.empty() &&
        rt.deliveries[0].msg.kind == kWalk)
      walk_rounds.push_back(rt.round);
  uint32_t n = net.n();
  REQUIRE(walk_rounds.size() == 2 * (2 * n - 2));
  for (size_t i = 1; i < walk_rounds.size(); ++i)
    CHECK(walk_rounds[i] == walk_rounds[i - 1] + 1);

  // every node reports done exactly one round after the final walk step
  CHECK(res.rounds == walk_rounds.back() + 1);
}

TEST_CASE("btd stage one: adjacent sources thin to one survivor per box") {
  SinrParams p;
  NetworkInstance net;
  net.N = 8;
  net.stations = {{6, {0.1, 0.1}}, {2, {0.2, 0.1}}, {5, {0.3, 0.15}}};
  EngineOptions opt;
  opt.limit = 200000;
  auto res = run_protocol(net, p, btd_multicast(), {{6, {1}}, {2, {2}}, {5, {3}}}, opt);
  REQUIRE(res.completed);

  // only station 2 may issue a token: survivors of the opening sweep are the
  // sources that heard no smaller source id
  std::set<int64_t> tokens;
  for (const auto& rt : res.trace)
    for (const auto& dv : rt.deliveries)
      if (dv.msg.kind == kToken || dv.msg.kind == kCheck) tokens.insert(dv.msg.fields[0]);
  CHECK(tokens == std::set<int64_t>{2});
}

TEST_CASE("protocol_by_name finds the suite and rejects strangers") {
  CHECK(protocol_by_name("central-gran-independent").name == "central-gran-independent");
  CHECK(protocol_suite().size() == 5);
  CHECK_THROWS_AS(protocol_by_name("nope"), std::invalid_argument);
}
