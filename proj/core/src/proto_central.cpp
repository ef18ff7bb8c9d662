#include <algorithm>
#include <map>

#include "mbcast/protocols.hpp"
#include "mbcast/schedule.hpp"
#include "box_gather.hpp"
#include "proto_util.hpp"

namespace mbc {
namespace {

using detail::BoxGather;
using detail::box_residue;
using detail::ctrl_msg;
using detail::nonneg_mod;

// Full-topology pipeline. Time is cut into d^2-round blocks; a box acts in
// the sub-round matching its dilution residue, so every block carries at most
// one transmitter per box of each residue class and reception within range is
// guaranteed. Phases, all sized from shared constants:
//   election   in-box leader election (rank sweep, or doubling grids when the
//              granularity-dependent flavor is chosen)
//   gather     lockstep tree gather of the box rumors at the leader
//   wake       leader rebroadcast: whole box informed of the box rumors
//   push       backbone members pipeline rumors by in-box rank
struct CentralNode : NodeProto {
  bool gdep;
  SinrParams p;
  uint32_t N, k, D;
  uint32_t d, D2;
  uint64_t a1_end = 0, gather_end = 0, a3_end = 0, total = 0;
  uint32_t Bmax = 0, Hmax = 1, L = 0;
  double y0 = 0.0;
  std::map<StationId, Point> pos_of;

  StationId self;
  Point pos;
  GridCoord box;
  uint32_t rid = 0;
  uint32_t box_rank = 0;
  int hrank = -1;
  bool is_source;

  std::vector<uint32_t> rec;
  std::set<uint32_t> have;

  std::set<StationId> box_sources;
  bool active;
  std::vector<StationId> kids;
  std::vector<StationId> heard;
  uint32_t next_fold = 0;
  bool setup_done = false;
  StationId box_leader = 0;
  BoxGather gather;
  size_t sent = 0;
  bool done_ = false;

  CentralNode(const NodeView& v, const std::vector<uint32_t>& rumors, bool granularity_dependent)
      : gdep(granularity_dependent), p(v.params()), rec(rumors), have(rumors.begin(), rumors.end()) {
    const NetworkInstance& net = v.topology();
    N = v.N();
    k = v.k();
    D = v.diameter();
    d = safe_dilution_constant(p);
    D2 = d * d;
    self = v.id();
    pos = v.own_pos();
    box = pivotal_box(pos, p);
    rid = box_residue(box, d);
    is_source = !rumors.empty();
    active = is_source;

    std::map<GridCoord, std::vector<StationId>> occ;
    for (const auto& st : net.stations) {
      pos_of[st.id] = st.pos;
      occ[pivotal_box(st.pos, p)].push_back(st.id);
    }
    for (auto& [c, ids] : occ) {
      std::sort(ids.begin(), ids.end());
      Bmax = std::max<uint32_t>(Bmax, ids.size());
    }
    auto& mine = occ[box];
    box_rank = std::find(mine.begin(), mine.end(), self) - mine.begin();

    auto bb = compute_backbone(net, p);
    for (auto& [c, ids] : bb.by_box) Hmax = std::max<uint32_t>(Hmax, ids.size());
    auto hb = bb.by_box.find(box);
    if (hb != bb.by_box.end()) {
      auto it = std::find(hb->second.begin(), hb->second.end(), self);
      if (it != hb->second.end()) hrank = it - hb->second.begin();
    }

    uint64_t a1_rounds;
    if (gdep) {
      // finest grid with at most one station per box, then doubling up to the
      // pivotal grid; h = smallest power of two >= g
      double g = v.granularity();
      uint64_t m = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(g)));
      uint64_t h = std::bit_ceil(m);
      L = std::bit_width(h) - 1;
      y0 = p.cell() / static_cast<double>(h);
      a1_rounds = static_cast<uint64_t>(L) * 4 * D2;
    } else {
      a1_rounds = static_cast<uint64_t>(Bmax) * D2;
    }
    a1_end = a1_rounds;
    gather_end = a1_end + static_cast<uint64_t>(3 * k + 4) * D2;
    a3_end = gather_end + static_cast<uint64_t>(k + 1) * D2;
    const uint64_t invocations = 6ull * D + 2ull * k + 16;
    total = a3_end + invocations * Hmax * D2;
    if (net.n() == 1) total = 0;

    gather.self = self;
    gather.N = N;
    gather.participant = is_source;
    if (!gdep && is_source) box_sources.insert(self);
    done_ = total == 0;
  }

  void ingest(const Message& m, uint64_t t) {
    if (m.rumor && have.insert(*m.rumor).second) rec.push_back(*m.rumor);
    auto same_box = [&](StationId u) { return pivotal_box(pos_of.at(u), p) == box; };
    switch (m.kind) {
      case kElect:
        if (!gdep) {
          if (same_box(m.sender)) box_sources.insert(m.sender);
        } else if (t >= 1 && t - 1 < a1_end) {
          uint32_t ph = (t - 1) / (4ull * D2);
          double pc = y0 * static_cast<double>(2u << ph);
          if (grid_box(pos_of.at(m.sender), pc) == grid_box(pos, pc)) heard.push_back(m.sender);
        }
        break;
      case kGatherStart:
        if (same_box(m.sender)) {
          box_leader = m.sender;
          gather.apply(m, m.sender);
        }
        break;
      case kGatherChild:
      case kGatherRumor:
      case kGatherEnd:
        if (same_box(m.sender)) gather.apply(m, m.sender);
        break;
      default:
        break;
    }
  }

  void fold_phase() {
    if (active) {
      bool lose = std::any_of(heard.begin(), heard.end(), [&](StationId u) { return u < self; });
      if (lose) {
        active = false;
      } else {
        std::sort(heard.begin(), heard.end());
        kids.insert(kids.end(), heard.begin(), heard.end());
      }
    }
    heard.clear();
    ++next_fold;
  }

  void setup_gather() {
    if (gdep) {
      gather.root = active;
      if (active) box_leader = self;
      gather.children = kids;
    } else if (is_source) {
      box_leader = *box_sources.begin();
      gather.root = box_leader == self;
      if (gather.root)
        gather.children.assign(std::next(box_sources.begin()), box_sources.end());
    }
    setup_done = true;
  }

  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    uint64_t t = view.round();
    if (inbox) ingest(*inbox, t);
    if (gdep)
      while (next_fold < L && t >= static_cast<uint64_t>(next_fold + 1) * 4 * D2) fold_phase();
    if (!setup_done && t >= a1_end) setup_gather();
    done_ = t + 1 >= total;
    if (total == 0) return {};

    Action a;
    auto send = [&](Message m) {
      a.transmit = true;
      a.msg = std::move(m);
    };
    if (t < a1_end) {
      if (!gdep) {
        if (is_source && t / D2 == box_rank && t % D2 == rid) {
          Message m = ctrl_msg(kElect, N);
          m.rumor = rec[0];
          send(std::move(m));
        }
      } else if (active) {
        uint32_t ph = t / (4ull * D2), u = t % (4ull * D2), sp = u / D2, sub = u % D2;
        double cc = y0 * static_cast<double>(1u << ph);
        GridCoord cb = grid_box(pos, cc), pb = grid_box(pos, cc * 2);
        uint32_t mysp = nonneg_mod(cb.i, 2) + 2 * nonneg_mod(cb.j, 2);
        if (sp == mysp && sub == box_residue(pb, d)) {
          Message m = ctrl_msg(kElect, N);
          m.rumor = rec[0];
          send(std::move(m));
        }
      }
    } else if (t < gather_end) {
      if ((t - a1_end) % D2 == rid) {
        auto m = gather.emit(rec);
        if (m) send(std::move(*m));
      }
    } else if (t < a3_end) {
      if (box_leader == self && (t - gather_end) % D2 == rid) {
        uint64_t j = (t - gather_end) / D2;
        if (j < rec.size()) {
          Message m = ctrl_msg(kWakeRumor, N);
          m.rumor = rec[j];
          send(std::move(m));
        }
      }
    } else if (t < total) {
      uint64_t idx = t - a3_end;
      if (idx % D2 == rid && hrank >= 0 &&
          (idx / D2) % Hmax == static_cast<uint32_t>(hrank) && sent < rec.size()) {
        Message m = ctrl_msg(kPush, N);
        m.rumor = rec[sent++];
        send(std::move(m));
      }
    }
    return a;
  }

  bool done() const override { return done_; }
};

ProtocolSpec make_central(bool gdep) {
  ProtocolSpec s;
  s.name = gdep ? "central-gran-dependent" : "central-gran-independent";
  s.knowledge = Knowledge::FullTopology;
  s.assume_global_clock = true;
  s.make_node = [gdep](const NodeView& v, const std::vector<uint32_t>& rumors) {
    return std::make_unique<CentralNode>(v, rumors, gdep);
  };
  return s;
}

}  // namespace

ProtocolSpec central_gran_independent() { return make_central(false); }
ProtocolSpec central_gran_dependent() { return make_central(true); }

}  // namespace mbc
