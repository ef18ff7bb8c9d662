#include "mbcast/backbone.hpp"

#include <algorithm>
#include <queue>

namespace mbc {

BackboneStructure compute_backbone(const NetworkInstance& net, const SinrParams& p) {
  net.validate();
  BackboneStructure bb;
  const size_t n = net.n();
  auto g = communication_graph(net, p);

  std::vector<GridCoord> box(n);
  std::map<GridCoord, std::vector<size_t>> occupants;
  for (size_t i = 0; i < n; ++i) {
    box[i] = pivotal_box(net.stations[i].pos, p);
    occupants[box[i]].push_back(i);
  }

  for (auto& [c, idxs] : occupants) {
    StationId best = net.stations[idxs.front()].id;
    for (size_t i : idxs) best = std::min(best, net.stations[i].id);
    bb.leaders[c] = best;
  }

  // directional senders: least id in C with a neighbor in C + dir
  for (auto& [c, idxs] : occupants) {
    for (auto [di, dj] : dir_set()) {
      GridCoord tgt{c.i + di, c.j + dj};
      if (!occupants.count(tgt)) continue;
      StationId best = 0;
      for (size_t i : idxs)
        for (uint32_t nb : g.adj[i])
          if (box[nb] == tgt) {
            StationId id = net.stations[i].id;
            if (best == 0 || id < best) best = id;
            break;
          }
      if (best) bb.senders[{c, {di, dj}}] = best;
    }
  }

  // receivers: least neighbor in C of the opposite box's sender towards C
  for (auto& [key, sid] : bb.senders) {
    auto [c, d] = key;
    GridCoord tgt{c.i + d.first, c.j + d.second};
    // this sender s_C^(d) serves receiver r_tgt^(-d)
    size_t si = net.index_of(sid);
    StationId best = 0;
    for (uint32_t nb : g.adj[si])
      if (box[nb] == tgt) {
        StationId id = net.stations[nb].id;
        if (best == 0 || id < best) best = id;
      }
    if (best) bb.receivers[{tgt, {-d.first, -d.second}}] = best;
  }

  for (auto& [c, id] : bb.leaders) bb.members.insert(id);
  for (auto& [k, id] : bb.senders) bb.members.insert(id);
  for (auto& [k, id] : bb.receivers) bb.members.insert(id);
  for (StationId id : bb.members)
    bb.by_box[box[net.index_of(id)]].push_back(id);
  for (auto& [c, ids] : bb.by_box) std::sort(ids.begin(), ids.end());
  return bb;
}

std::string verify_backbone(const BackboneStructure& bb, const NetworkInstance& net,
                            const SinrParams& p) {
  const size_t n = net.n();
  auto g = communication_graph(net, p);
  std::vector<GridCoord> box(n);
  for (size_t i = 0; i < n; ++i) box[i] = pivotal_box(net.stations[i].pos, p);

  const size_t cap = 1 + 2 * dir_set().size();
  for (auto& [c, ids] : bb.by_box)
    if (ids.size() > cap) return "box member bound exceeded";

  // domination: every nonempty box has a leader, and the leader is in the box
  // with the least id (leader dominates the box since box diameter <= r)
  std::map<GridCoord, StationId> min_per_box;
  for (size_t i = 0; i < n; ++i) {
    auto it = min_per_box.find(box[i]);
    if (it == min_per_box.end() || net.stations[i].id < it->second)
      min_per_box[box[i]] = net.stations[i].id;
  }
  if (min_per_box.size() != bb.leaders.size()) return "leader per nonempty box missing";
  for (auto& [c, id] : min_per_box) {
    auto it = bb.leaders.find(c);
    if (it == bb.leaders.end() || it->second != id) return "leader is not the least id of its box";
  }

  auto adjacent = [&](StationId a, StationId b) {
    size_t ia = net.index_of(a), ib = net.index_of(b);
    return std::find(g.adj[ia].begin(), g.adj[ia].end(), static_cast<uint32_t>(ib)) !=
           g.adj[ia].end();
  };

  for (auto& [key, sid] : bb.senders) {
    auto [c, d] = key;
    if (box[net.index_of(sid)] != c) return "sender outside its box";
    GridCoord tgt{c.i + d.first, c.j + d.second};
    bool has = false;
    for (uint32_t nb : g.adj[net.index_of(sid)]) has = has || box[nb] == tgt;
    if (!has) return "sender has no neighbor in the directed box";
  }
  for (auto& [key, rid] : bb.receivers) {
    auto [c, d] = key;
    if (box[net.index_of(rid)] != c) return "receiver outside its box";
    GridCoord src{c.i + d.first, c.j + d.second};
    auto s = bb.senders.find({src, {-d.first, -d.second}});
    if (s == bb.senders.end()) return "receiver without matching sender";
    if (!adjacent(rid, s->second)) return "receiver not adjacent to its sender";
  }

  // connectivity of H mirrors connectivity of G
  if (g.connected() && !bb.members.empty()) {
    std::map<StationId, std::vector<StationId>> hadj;
    std::vector<StationId> mem(bb.members.begin(), bb.members.end());
    for (size_t a = 0; a < mem.size(); ++a)
      for (size_t b = a + 1; b < mem.size(); ++b)
        if (adjacent(mem[a], mem[b])) {
          hadj[mem[a]].push_back(mem[b]);
          hadj[mem[b]].push_back(mem[a]);
        }
    std::set<StationId> seen{mem[0]};
    std::queue<StationId> q;
    q.push(mem[0]);
    while (!q.empty()) {
      StationId u = q.front();
      q.pop();
      for (StationId v : hadj[u])
        if (seen.insert(v).second) q.push(v);
    }
    if (seen.size() != mem.size()) return "backbone not connected";
  }
  return {};
}

}  // namespace mbc
