#include "doctest.h"
#include "mbcast/backbone.hpp"
#include "mbcast/netgen.hpp"

using namespace mbc;

TEST_CASE("single occupied box elects the least id and nothing else") {
  SinrParams p;
  NetworkInstance net;
  net.N = 16;
  net.stations = {{9, {0.1, 0.1}}, {5, {p.cell() * 0.7, p.cell() * 0.3}}};
  auto bb = compute_backbone(net, p);
  REQUIRE(bb.leaders.size() == 1);
  CHECK(bb.leaders.begin()->second == 5);
  CHECK(bb.senders.empty());
  CHECK(bb.receivers.empty());
  CHECK(bb.members == std::set<StationId>{5});
  CHECK(verify_backbone(bb, net, p).empty());
}

TEST_CASE("two adjacent singleton boxes cross-link sender and receiver") {
  SinrParams p;
  NetworkInstance net;
  net.N = 16;
  net.stations = {{3, {p.cell() * 0.9, 0.2 * p.cell()}},
                  {7, {p.cell() * 1.1, 0.2 * p.cell()}}};
  auto bb = compute_backbone(net, p);
  GridCoord a{0, 0}, b{1, 0};
  CHECK(bb.leaders.at(a) == 3);
  CHECK(bb.leaders.at(b) == 7);
  CHECK(bb.senders.at({a, {1, 0}}) == 3);
  CHECK(bb.senders.at({b, {-1, 0}}) == 7);
  CHECK(bb.receivers.at({a, {1, 0}}) == 3);  // receives from box b
  CHECK(bb.receivers.at({b, {-1, 0}}) == 7);
  CHECK(bb.members == std::set<StationId>{3, 7});
  CHECK(verify_backbone(bb, net, p).empty());
}

TEST_CASE("sender is the least id with a neighbor in the directed box") {
  SinrParams p;
  const double c = p.cell();
  NetworkInstance net;
  net.N = 16;
  // box (0,0): id 1 far from box (1,0), id 4 close to it; id 8 alone in (1,0)
  net.stations = {{1, {0.05 * c, 0.5 * c}},
                  {4, {0.95 * c, 0.5 * c}},
                  {8, {1.05 * c, 0.5 * c}}};
  auto bb = compute_backbone(net, p);
  CHECK(bb.leaders.at({0, 0}) == 1);
  // both are within range of 8 (distance <= c < r), so least id 1 wins
  CHECK(bb.senders.at({{0, 0}, {1, 0}}) == 1);
  CHECK(verify_backbone(bb, net, p).empty());
}

TEST_CASE("random instances verify and respect the per-box bound") {
  SinrParams p;
  for (uint64_t seed : {11u, 29u, 63u}) {
    auto net = gen_random(100, 3.0, p.range() / 12, seed, p);
    auto bb = compute_backbone(net, p);
    CHECK(verify_backbone(bb, net, p).empty());
    const size_t cap = 1 + 2 * dir_set().size();
    for (auto& [box, ids] : bb.by_box) {
      CHECK(ids.size() <= cap);
      CHECK(std::is_sorted(ids.begin(), ids.end()));
    }
    // every station's box has a leader
    for (const auto& st : net.stations)
      CHECK(bb.leaders.count(pivotal_box(st.pos, p)) == 1);
  }
}

TEST_CASE("tampered structures are rejected") {
  SinrParams p;
  auto net = gen_random(60, 2.2, p.range() / 10, 17, p);
  auto bb = compute_backbone(net, p);
  REQUIRE(verify_backbone(bb, net, p).empty());

  auto wrong_leader = bb;
  auto it = wrong_leader.leaders.begin();
  it->second += 1000;  // not the min id (likely not even in the box)
  CHECK(!verify_backbone(wrong_leader, net, p).empty());

  auto dropped = bb;
  dropped.leaders.erase(dropped.leaders.begin());
  CHECK(!verify_backbone(dropped, net, p).empty());
}
