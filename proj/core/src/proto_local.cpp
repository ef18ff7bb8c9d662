#include <algorithm>
#include <map>
#include <set>

#include "mbcast/protocols.hpp"
#include "mbcast/schedule.hpp"
#include "proto_util.hpp"

namespace mbc {
namespace {

using detail::box_residue;
using detail::ctrl_msg;
using detail::id_bits;

// Neighbors-with-coordinates pipeline. The box roster is locally known (box
// mates are mutual neighbors), so the box leader is the roster minimum at no
// round cost. Blocks of d^2 rounds, a box acting in its residue sub-round:
//   wake     roster round robin of pings until the whole graph is awake
//   announce roster round robin of direction bitmasks: who can reach which
//            neighbor box (chunked to fit the control-bit budget)
//   notify   per direction, the elected sender names its receiver across
//   echo     per direction, the named receiver tells its own box
//   gather   roster round robin until every box rumor is box-wide
//   push     backbone members pipeline rumors by in-box rank
struct LocalNode : NodeProto {
  SinrParams p;
  uint32_t N, k, D;
  uint32_t d, D2, R, Hcap, payload, chunks;
  uint64_t wb_end = 0, eb_end = 0, n2b_end = 0, n3b_end = 0, g1b_end = 0, pb_end = 0;
  uint64_t total = 0;

  StationId self;
  GridCoord box;
  uint32_t rid = 0;
  std::vector<StationId> roster;
  uint32_t rank = 0;
  std::map<StationId, GridCoord> nbr_box;
  std::array<StationId, 20> min_nbr_in{};  // my least neighbor per direction, 0 if none
  std::array<std::set<StationId>, 20> participants;
  std::array<StationId, 20> receiver_of{};  // receivers of my box, from echoes
  std::array<bool, 20> i_receive{};

  std::vector<uint32_t> rec;
  std::set<uint32_t> have;
  std::set<uint32_t> announced;
  std::vector<StationId> hmem;
  int hrank = -2;  // unresolved
  size_t sent = 0;
  bool done_ = false;

  LocalNode(const NodeView& v, const std::vector<uint32_t>& rumors)
      : p(v.params()), rec(rumors), have(rumors.begin(), rumors.end()) {
    N = v.N();
    k = v.k();
    D = v.diameter();
    d = safe_dilution_constant(p);
    D2 = d * d;
    self = v.id();
    box = pivotal_box(v.own_pos(), p);
    rid = box_residue(box, d);

    roster.push_back(self);
    const auto& dirs = dir_set();
    for (StationId u : v.neighbor_ids()) {
      GridCoord b = pivotal_box(v.neighbor_pos(u), p);
      nbr_box[u] = b;
      if (b == box) {
        roster.push_back(u);
        continue;
      }
      for (size_t i = 0; i < dirs.size(); ++i)
        if (b.i == box.i + dirs[i].first && b.j == box.j + dirs[i].second) {
          if (!min_nbr_in[i] || u < min_nbr_in[i]) min_nbr_in[i] = u;
          participants[i].insert(self);
        }
    }
    std::sort(roster.begin(), roster.end());
    rank = std::find(roster.begin(), roster.end(), self) - roster.begin();

    R = std::min<uint32_t>(v.n(), v.max_degree() + 1);
    Hcap = std::min<uint32_t>(1 + 2 * dirs.size(), R);
    payload = std::min<uint32_t>(20, control_bit_budget(N, 8) - 4);
    chunks = (20 + payload - 1) / payload;

    wb_end = static_cast<uint64_t>(D + 2) * R;
    eb_end = wb_end + static_cast<uint64_t>(chunks) * R;
    n2b_end = eb_end + dirs.size();
    n3b_end = n2b_end + dirs.size();
    g1b_end = n3b_end + static_cast<uint64_t>(k) * R;
    pb_end = g1b_end + (6ull * D + 2ull * k + 16) * Hcap;
    total = pb_end * D2;
    if (v.n() == 1) total = 0;
    done_ = total == 0;
  }

  int dir_index(const GridCoord& from, const GridCoord& to) const {
    const auto& dirs = dir_set();
    for (size_t i = 0; i < dirs.size(); ++i)
      if (to.i == from.i + dirs[i].first && to.j == from.j + dirs[i].second) return i;
    return -1;
  }

  bool in_roster(StationId u) const {
    return std::binary_search(roster.begin(), roster.end(), u);
  }

  void ingest(const Message& m, uint64_t t) {
    if (m.rumor && have.insert(*m.rumor).second) rec.push_back(*m.rumor);
    if (t == 0) return;
    uint64_t bd = (t - 1) / D2;
    if (bd >= wb_end && bd < eb_end) {
      if (m.kind == kRoster && in_roster(m.sender) && !m.fields.empty()) {
        uint32_t chunk = (bd - wb_end) / R;
        uint64_t mask = static_cast<uint64_t>(m.fields[0]);
        for (uint32_t b = 0; b < payload; ++b) {
          uint32_t dd = chunk * payload + b;
          if (dd < 20 && (mask >> b & 1)) participants[dd].insert(m.sender);
        }
      }
    } else if (bd >= eb_end && bd < n2b_end) {
      if (m.kind == kNotify && !m.fields.empty() &&
          static_cast<StationId>(m.fields[0]) == self) {
        int dd = dir_index(box, nbr_box.at(m.sender));
        if (dd >= 0) i_receive[dd] = true;
      }
    } else if (bd >= n2b_end && bd < n3b_end) {
      if (m.kind == kNotify && m.fields.empty() && in_roster(m.sender))
        receiver_of[bd - n2b_end] = m.sender;
    } else if (bd >= n3b_end && bd < g1b_end) {
      if (m.kind == kGatherRumor && in_roster(m.sender) && m.rumor) announced.insert(*m.rumor);
    }
  }

  StationId sender_for(uint32_t dd) const {
    return participants[dd].empty() ? 0 : *participants[dd].begin();
  }

  void resolve_hrank() {
    std::set<StationId> h{roster[0]};
    for (uint32_t dd = 0; dd < 20; ++dd) {
      if (StationId s = sender_for(dd)) h.insert(s);
      if (receiver_of[dd]) h.insert(receiver_of[dd]);
      if (i_receive[dd]) h.insert(self);
    }
    hmem.assign(h.begin(), h.end());
    auto it = std::find(hmem.begin(), hmem.end(), self);
    hrank = it == hmem.end() ? -1 : static_cast<int>(it - hmem.begin());
  }

  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    uint64_t t = view.round();
    if (inbox) ingest(*inbox, t);
    done_ = t + 1 >= total;
    if (total == 0) return {};

    Action a;
    auto send = [&](Message m) {
      a.transmit = true;
      a.msg = std::move(m);
    };
    if (t % D2 != rid) return a;
    uint64_t b = t / D2;
    if (b < wb_end) {
      if (b % R == rank) {
        Message m = ctrl_msg(kWakeRumor, N);
        if (!rec.empty()) m.rumor = rec[0];
        send(std::move(m));
      }
    } else if (b < eb_end) {
      uint64_t u = b - wb_end;
      if (u % R == rank) {
        uint32_t chunk = u / R;
        uint64_t mask = 0;
        for (uint32_t bit = 0; bit < payload; ++bit) {
          uint32_t dd = chunk * payload + bit;
          if (dd < 20 && participants[dd].count(self)) mask |= 1ull << bit;
        }
        if (mask) {
          Message m = ctrl_msg(kRoster, N);
          m.fields = {static_cast<int64_t>(mask)};
          m.control_bits = 4 + payload;
          send(std::move(m));
        }
      }
    } else if (b < n2b_end) {
      uint32_t dd = b - eb_end;
      if (sender_for(dd) == self) {
        Message m = ctrl_msg(kNotify, N, {static_cast<int64_t>(min_nbr_in[dd])});
        send(std::move(m));
      }
    } else if (b < n3b_end) {
      uint32_t dd = b - n2b_end;
      if (i_receive[dd]) {
        receiver_of[dd] = self;
        send(ctrl_msg(kNotify, N));
      }
    } else if (b < g1b_end) {
      if ((b - n3b_end) % R == rank) {
        for (uint32_t r : rec)
          if (!announced.count(r)) {
            announced.insert(r);
            Message m = ctrl_msg(kGatherRumor, N);
            m.rumor = r;
            send(std::move(m));
            break;
          }
      }
    } else if (b < pb_end) {
      if (hrank == -2) resolve_hrank();
      if (hrank >= 0 && (b - g1b_end) % Hcap == static_cast<uint32_t>(hrank) &&
          sent < rec.size()) {
        Message m = ctrl_msg(kPush, N);
        m.rumor = rec[sent++];
        send(std::move(m));
      }
    }
    return a;
  }

  bool done() const override { return done_; }
};

}  // namespace

ProtocolSpec local_multicast() {
  ProtocolSpec s;
  s.name = "local-multicast";
  s.knowledge = Knowledge::NeighborsWithCoords;
  s.assume_global_clock = true;
  s.make_node = [](const NodeView& v, const std::vector<uint32_t>& rumors) {
    return std::make_unique<LocalNode>(v, rumors);
  };
  return s;
}

}  // namespace mbc
