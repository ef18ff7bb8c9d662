#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "mbcast/protocols.hpp"
#include "proto_util.hpp"

namespace mbc {
namespace {

using detail::id_bits;

constexpr uint64_t kNoTok = ~0ull;

// Neighbor-ids-only pipeline. All collision handling rides on id sweeps: in
// round t of a sweep only the station with id t % N + 1 may transmit, so every
// transmission is globally solo and reaches all neighbors. Structure:
//   stage 1  one sweep; sources transmit, anyone hearing a smaller source id
//            is out; survivors are pairwise non-adjacent, so at most one per
//            pivotal box
//   stage 2  each survivor issues a token (its id) and runs the tree-building
//            traversal; every original traversal round is emulated by one
//            three-sweep token-conflict invocation (senders / destination
//            echoes / holder confirmations); a node hearing a smaller token id
//            abandons its state and joins that traversal afresh; the token
//            carries a visited counter, and only a token that visited all n
//            nodes may close the stage
//   walks    two Euler walks of exactly 2n-2 single-transmitter rounds: the
//            first counts nodes, the second carries n plus a step index so
//            every node learns the common stop round
//   pull     a third walk freezes at each leaf holding rumors while the leaf
//            uploads them to its parent, then a fourth walk resynchronizes
//   spread   internal tree nodes keep rumor stacks; each sweep every internal
//            node with a nonempty stack transmits its top rumor and pops it
struct BtdNode : NodeProto {
  bool trav_only;
  uint32_t N, k, n;
  StationId self;
  std::vector<StationId> nbrs;
  std::vector<uint32_t> own_rumors;
  std::set<uint32_t> have;
  bool is_source, survivor;

  uint64_t s2_base, inv_len, total0;

  // traversal state for the currently joined token
  uint64_t mintok = kNoTok;
  bool visited = false, marked = false, holder = false;
  StationId parent = 0;
  std::deque<StationId> kids;
  std::vector<StationId> archived;
  std::vector<StationId> L;
  enum class Mode { Idle, Check, Listen, Pass };
  Mode mode = Mode::Idle;
  uint32_t listen_wait = 0;
  StationId awaiting = 0;
  bool reply_pending = false;
  StationId reply_dest = 0;
  uint64_t cur_count = 0;

  struct Heard {
    uint16_t kind;
    StationId sender;
    std::vector<int64_t> f;
  };
  std::vector<Heard> buf;
  std::optional<Message> outgoing;

  // walk state
  int cur_walk = 0;
  size_t wcursor = 0;
  uint64_t wcount = 0;
  uint64_t t2_end = 0, t4_end = 0;
  std::deque<Message> pending;

  // rumor spreading
  bool mb_init = false;
  std::vector<uint32_t> stack;
  uint64_t runs;

  BtdNode(const NodeView& v, const std::vector<uint32_t>& rumors, bool traversals_only)
      : trav_only(traversals_only), own_rumors(rumors), have(rumors.begin(), rumors.end()) {
    N = v.N();
    k = v.k();
    n = v.n();
    self = v.id();
    nbrs = v.neighbor_ids();
    std::sort(nbrs.begin(), nbrs.end());
    is_source = !rumors.empty();
    survivor = is_source;
    s2_base = N;
    inv_len = 3ull * N;
    runs = 2ull * (n + k) + 16;
    total0 = n == 1 ? 0 : 1;  // zero means done immediately
  }

  Message msg(uint16_t kind, std::vector<int64_t> fields = {}) const {
    Message m;
    m.kind = kind;
    m.fields = std::move(fields);
    uint32_t bits = 4 + (id_bits(N) + 1) * static_cast<uint32_t>(m.fields.size());
    m.control_bits = std::min(bits, control_bit_budget(N, 8));
    return m;
  }

  void join_token(uint64_t tok) {
    mintok = tok;
    visited = marked = holder = false;
    parent = 0;
    kids.clear();
    archived.clear();
    L.clear();
    for (StationId u : nbrs)
      if (u != tok) L.push_back(u);
    mode = Mode::Idle;
    listen_wait = 0;
    awaiting = 0;
    reply_pending = false;
    outgoing.reset();
  }

  void drop(StationId z) { std::erase(L, z); }

  void begin_walk(int wno, uint64_t t) {
    cur_walk = wno;
    wcursor = 0;
    walk_step = 0;
    if (wno == 1) wcount = 1;
    forward_walk(wno, t);
  }

  void forward_walk(int wno, uint64_t t) {
    StationId dest = wcursor < archived.size() ? archived[wcursor++] : parent;
    if (dest == 0) {  // the root finished walk wno
      if (wno == 1) {
        begin_walk(2, t);
      } else if (wno == 2) {
        t2_end = t;
        if (!trav_only) begin_walk(3, t);
      } else if (wno == 3) {
        begin_walk(4, t);
      } else {
        t4_end = t;
      }
      return;
    }
    int64_t d = dest;
    if (wno == 1)
      pending.push_back(msg(kWalk, {1, d, static_cast<int64_t>(wcount), 0}));
    else if (wno == 3)
      pending.push_back(msg(kWalk, {3, d, 0, 0}));
    else
      pending.push_back(msg(kWalk, {wno, d, n, walk_step + 1}));
  }

  int64_t walk_step = 0;  // step of the sync walk message being forwarded

  void on_walk(const Message& m, uint64_t t) {
    int wno = m.fields[0];
    // any hearer of a sync walk learns the common stop round
    if (wno == 2 || wno == 4) {
      uint64_t nn = m.fields[2], s = m.fields[3];
      uint64_t end = t + 2 * (nn - 1) - s;
      if (wno == 2)
        t2_end = end;
      else
        t4_end = end;
    }
    if (static_cast<StationId>(m.fields[1]) != self) return;
    bool first = wno != cur_walk;
    if (first) {
      cur_walk = wno;
      wcursor = 0;
    }
    if (wno == 1) wcount = m.fields[2] + (first ? 1 : 0);
    if (wno == 2 || wno == 4) walk_step = m.fields[3];
    if (wno == 3 && archived.empty())
      for (uint32_t r : own_rumors) {
        Message f = msg(kFreeze);
        f.rumor = r;
        pending.push_back(std::move(f));
      }
    forward_walk(wno, t);
  }

  void ingest(const Message& m, uint64_t t) {
    if (m.rumor && have.insert(*m.rumor).second && mb_init && !archived.empty())
      stack.push_back(*m.rumor);
    switch (m.kind) {
      case kElect:
        if (m.sender < self) survivor = false;
        break;
      case kToken:
      case kCheck:
      case kReply:
      case kTokenEcho: {
        uint64_t tok = m.fields[0];
        if (tok < mintok) join_token(tok);
        if (m.kind != kTokenEcho) buf.push_back({m.kind, m.sender, m.fields});
        break;
      }
      case kWalk:
        on_walk(m, t);
        break;
      default:
        break;
    }
  }

  void pass_token(uint64_t t) {
    if (!kids.empty()) {
      StationId z = kids.front();
      kids.pop_front();
      outgoing =
          msg(kToken, {static_cast<int64_t>(mintok), z, static_cast<int64_t>(cur_count)});
      holder = false;
      mode = Mode::Idle;
    } else if (parent) {
      outgoing = msg(kToken,
                     {static_cast<int64_t>(mintok), parent, static_cast<int64_t>(cur_count)});
      holder = false;
      mode = Mode::Idle;
    } else {
      // the root: close the stage only after spanning everyone
      holder = false;
      mode = Mode::Idle;
      if (cur_count == n) begin_walk(1, t);
    }
  }

  void boundary(uint64_t t) {
    std::sort(buf.begin(), buf.end(),
              [](const Heard& a, const Heard& b) { return a.f[0] < b.f[0]; });
    for (const Heard& h : buf) {
      if (static_cast<uint64_t>(h.f[0]) != mintok) continue;
      StationId dest = h.f[1];
      if (h.kind == kCheck) {
        if (dest == self) {
          if (!visited && !marked) {
            marked = true;
            reply_pending = true;
            reply_dest = h.sender;
          }
        } else {
          drop(dest);
        }
      } else if (h.kind == kReply) {
        if (dest == self && mode == Mode::Listen && awaiting == h.sender) {
          kids.push_back(h.sender);
          archived.push_back(h.sender);
        }
        drop(h.sender);
      } else if (h.kind == kToken) {
        if (dest == self) {
          if (!visited) {
            visited = true;
            parent = h.sender;
            holder = true;
            mode = Mode::Check;
            cur_count = h.f[2] + 1;
          } else {
            holder = true;
            mode = Mode::Pass;
            cur_count = h.f[2];
          }
        } else {
          drop(dest);
        }
      }
    }
    buf.clear();

    if (reply_pending) {
      outgoing = msg(kReply, {static_cast<int64_t>(mintok), reply_dest});
      reply_pending = false;
      return;
    }
    if (!holder) return;
    if (mode == Mode::Listen) {
      if (listen_wait > 0) {
        --listen_wait;
        return;
      }
      mode = Mode::Check;
    }
    if (mode == Mode::Check) {
      if (!L.empty()) {
        StationId z = L.front();
        L.erase(L.begin());
        outgoing = msg(kCheck, {static_cast<int64_t>(mintok), z});
        mode = Mode::Listen;
        listen_wait = 1;
        awaiting = z;
      } else {
        pass_token(t);
      }
    } else if (mode == Mode::Pass) {
      pass_token(t);
    }
  }

  Action on_round(const NodeView& view, const std::optional<Message>& inbox) override {
    uint64_t t = view.round();
    if (inbox) ingest(*inbox, t);
    if (t >= s2_base && (t - s2_base) % inv_len == 0) {
      if (t == s2_base && survivor) {
        join_token(self);
        visited = true;
        holder = true;
        mode = Mode::Check;
        cur_count = 1;
      }
      boundary(t);
    }
    if (t2_end && t >= t2_end && !mb_init) {
      mb_init = true;
      stack.assign(own_rumors.begin(), own_rumors.end());
    }

    done_ = total0 == 0 ||
            (trav_only ? (t2_end && t + 1 >= t2_end)
                       : (t4_end && t + 1 >= t4_end + runs * N));

    Action a;
    auto send = [&](Message m) {
      a.transmit = true;
      a.msg = std::move(m);
    };
    if (!pending.empty()) {
      send(std::move(pending.front()));
      pending.pop_front();
      return a;
    }
    if (done_) return a;
    if (t < N) {
      if (is_source && t == static_cast<uint64_t>(self) - 1) send(msg(kElect));
      return a;
    }
    if (t4_end && t >= t4_end) {  // rumor-spreading sweeps
      if ((t - t4_end) % N == static_cast<uint64_t>(self) - 1 && !archived.empty() &&
          !stack.empty()) {
        Message m = msg(kPush);
        m.rumor = stack.back();
        stack.pop_back();
        send(std::move(m));
      }
      return a;
    }
    uint64_t off = (t - s2_base) % inv_len;
    uint64_t part = off / N, slot = off % N;
    if (slot != static_cast<uint64_t>(self) - 1) return a;
    if (part == 0) {
      if (outgoing) {
        send(std::move(*outgoing));
        outgoing.reset();
      }
    } else if (part == 1) {
      uint64_t best = kNoTok;
      for (const Heard& h : buf)
        if (static_cast<StationId>(h.f[1]) == self)
          best = std::min(best, static_cast<uint64_t>(h.f[0]));
      if (best != kNoTok) send(msg(kTokenEcho, {static_cast<int64_t>(best)}));
    } else if (holder) {
      send(msg(kTokenEcho, {static_cast<int64_t>(mintok)}));
    }
    return a;
  }

  bool done_ = false;
  bool done() const override { return done_; }
};

ProtocolSpec make_btd(bool trav_only) {
  ProtocolSpec s;
  s.name = trav_only ? "btd-traversals" : "btd-multicast";
  s.knowledge = Knowledge::NeighborIdsOnly;
  s.assume_global_clock = true;
  s.make_node = [trav_only](const NodeView& v, const std::vector<uint32_t>& rumors) {
    return std::make_unique<BtdNode>(v, rumors, trav_only);
  };
  return s;
}

}  // namespace

ProtocolSpec btd_multicast() { return make_btd(false); }
ProtocolSpec btd_traversals() { return make_btd(true); }

uint32_t smallest_token_rounds(uint32_t N) { return 3 * N; }

}  // namespace mbc
