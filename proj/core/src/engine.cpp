#include "mbcast/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "mbcast/netgen.hpp"

namespace mbc {

namespace detail {

struct EngineCore {
  const NetworkInstance* net = nullptr;
  SinrParams p;
  Knowledge knowledge = Knowledge::FullTopology;
  bool global_clock = false;
  uint32_t k = 0;
  Metrics metrics;
  uint32_t round = 0;
  std::vector<std::vector<StationId>> nbr_ids;  // per station index, ascending

  NodeView view(uint32_t idx) const {
    NodeView v;
    v.eng_ = this;
    v.idx_ = idx;
    return v;
  }
};

}  // namespace detail

namespace {

[[noreturn]] void gate_trip(const char* what) {
  throw std::logic_error(std::string("knowledge gate: ") + what);
}

}  // namespace

StationId NodeView::id() const { return eng_->net->stations[idx_].id; }
uint32_t NodeView::n() const { return static_cast<uint32_t>(eng_->net->n()); }
uint32_t NodeView::N() const { return eng_->net->N; }
uint32_t NodeView::k() const { return eng_->k; }
uint32_t NodeView::diameter() const { return eng_->metrics.D; }
uint32_t NodeView::max_degree() const { return eng_->metrics.Delta; }
const SinrParams& NodeView::params() const { return eng_->p; }
Knowledge NodeView::knowledge() const { return eng_->knowledge; }

double NodeView::granularity() const {
  if (eng_->knowledge != Knowledge::FullTopology) gate_trip("granularity");
  return eng_->metrics.g;
}

Point NodeView::own_pos() const {
  if (eng_->knowledge == Knowledge::NeighborIdsOnly) gate_trip("own_pos");
  return eng_->net->stations[idx_].pos;
}

const std::vector<StationId>& NodeView::neighbor_ids() const {
  if (eng_->knowledge == Knowledge::OwnCoordsOnly) gate_trip("neighbor_ids");
  return eng_->nbr_ids[idx_];
}

Point NodeView::neighbor_pos(StationId u) const {
  if (eng_->knowledge != Knowledge::FullTopology &&
      eng_->knowledge != Knowledge::NeighborsWithCoords)
    gate_trip("neighbor_pos");
  const auto& ids = eng_->nbr_ids[idx_];
  if (!std::binary_search(ids.begin(), ids.end(), u))
    throw std::logic_error("neighbor_pos: not a neighbor");
  return eng_->net->stations[eng_->net->index_of(u)].pos;
}

const NetworkInstance& NodeView::topology() const {
  if (eng_->knowledge != Knowledge::FullTopology) gate_trip("topology");
  return *eng_->net;
}

uint32_t NodeView::round() const {
  if (!eng_->global_clock) gate_trip("round counter without the global-clock flag");
  return eng_->round;
}

uint32_t control_bit_budget(uint32_t N, uint32_t c_msg) {
  if (N < 2) throw std::invalid_argument("id space too small");
  return c_msg * std::bit_width(N - 1);
}

RunResult run_protocol(const NetworkInstance& net, const SinrParams& p, const ProtocolSpec& proto,
                       const std::map<StationId, std::vector<uint32_t>>& sources,
                       const EngineOptions& opt) {
  net.validate();
  p.validate();
  if (!proto.make_node) throw std::invalid_argument("protocol has no node factory");
  if (sources.empty()) throw std::invalid_argument("no sources");
  if (opt.limit == 0) throw std::invalid_argument("round limit must be positive");

  const size_t n = net.n();
  detail::EngineCore core;
  core.net = &net;
  core.p = p;
  core.knowledge = proto.knowledge;
  core.global_clock = proto.assume_global_clock;
  core.metrics = compute_metrics(net, p);

  auto graph = communication_graph(net, p);
  core.nbr_ids.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (uint32_t j : graph.adj[i]) core.nbr_ids[i].push_back(net.stations[j].id);
    std::sort(core.nbr_ids[i].begin(), core.nbr_ids[i].end());
  }

  std::set<uint32_t> all_rumors;
  std::vector<std::set<uint32_t>> rumors(n);
  for (const auto& [id, rs] : sources) {
    size_t i = net.index_of(id);
    for (uint32_t r : rs) {
      all_rumors.insert(r);
      rumors[i].insert(r);
    }
  }
  core.k = static_cast<uint32_t>(all_rumors.size());
  if (core.k == 0) throw std::invalid_argument("sources carry no rumors");

  std::vector<bool> awake(n, false);
  for (size_t i = 0; i < n; ++i)
    awake[i] = proto.spontaneous || sources.count(net.stations[i].id) > 0;

  const uint32_t budget = control_bit_budget(net.N, opt.c_msg);
  std::vector<NodeView> views(n);
  std::vector<std::unique_ptr<NodeProto>> nodes(n);
  for (size_t i = 0; i < n; ++i) {
    views[i] = core.view(static_cast<uint32_t>(i));
    std::vector<uint32_t> own(rumors[i].begin(), rumors[i].end());
    nodes[i] = proto.make_node(views[i], own);
    if (!nodes[i]) throw std::logic_error("node factory returned null");
  }

  RunResult res;
  std::vector<std::optional<Message>> inbox(n);
  std::vector<std::optional<Message>> outgoing(n);

  auto finished = [&] {
    for (size_t i = 0; i < n; ++i)
      if (!awake[i] || !nodes[i]->done()) return false;
    return true;
  };

  while (core.round < opt.limit) {
    if (finished()) {
      res.terminated = true;
      break;
    }

    TransmissionSet txset;
    for (size_t i = 0; i < n; ++i) {
      outgoing[i].reset();
      if (!awake[i]) continue;
      Action act = nodes[i]->on_round(views[i], inbox[i]);
      inbox[i].reset();
      if (!act.transmit) continue;
      Message m = act.msg;
      if (m.control_bits > budget)
        throw std::runtime_error("message over control-bit budget at node " +
                                 std::to_string(net.stations[i].id));
      if (m.rumor && !rumors[i].count(*m.rumor))
        throw std::logic_error("node " + std::to_string(net.stations[i].id) +
                               " transmitted a rumor it does not hold");
      m.sender = net.stations[i].id;
      outgoing[i] = std::move(m);
      txset.push_back(net.stations[i].id);
    }

    RoundTrace rt;
    rt.round = core.round;
    rt.transmitters = txset;

    if (!txset.empty()) {
      for (size_t u = 0; u < n; ++u) {
        if (outgoing[u]) continue;  // half-duplex
        const Delivery* got = nullptr;
        for (size_t v = 0; v < n; ++v) {
          if (!outgoing[v]) continue;
          if (!receives(net.stations[v].id, net.stations[u].id, txset, net, p)) continue;
          if (got)
            throw std::logic_error("two deliveries to one receiver in a round (beta >= 1 broken)");
          rt.deliveries.push_back({net.stations[v].id, net.stations[u].id, *outgoing[v]});
          got = &rt.deliveries.back();
        }
        if (got) {
          inbox[u] = got->msg;
          if (got->msg.rumor) rumors[u].insert(*got->msg.rumor);
          if (!awake[u]) {
            awake[u] = true;
            rt.wakeups.push_back(net.stations[u].id);
          }
        }
      }
    }

    if (opt.record_trace) res.trace.push_back(std::move(rt));
    ++core.round;
  }

  res.rounds = core.round;
  if (!res.terminated) res.terminated = finished();
  res.completed = true;
  for (size_t i = 0; i < n; ++i) {
    res.rumors[net.stations[i].id] = rumors[i];
    if (awake[i]) res.awake.insert(net.stations[i].id);
    if (rumors[i] != all_rumors) res.completed = false;
  }
  return res;
}

}  // namespace mbc
