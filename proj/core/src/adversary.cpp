#include <map>
#include <set>
#include <stdexcept>

#include "mbcast/engine.hpp"
#include "mbcast/netgen.hpp"

namespace mbc {

AdversaryResult adversary_run(const ProtocolSpec& proto, uint32_t Delta, const SinrParams& p,
                              uint32_t limit) {
  const uint32_t c = blocking_count(p) - 1;
  const StationId wid = Delta + 2;

  // the protocol is deterministic, so each candidate's full history can be
  // produced up front and the elimination game replayed over the traces
  std::vector<std::vector<RoundTrace>> traces;
  for (uint32_t j = 0; j < Delta; ++j) {
    auto net = gen_lower_bound_family(Delta, j, p);
    EngineOptions opt;
    opt.limit = limit;
    traces.push_back(run_protocol(net, p, proto, {{1, {1}}}, opt).trace);
  }

  std::set<uint32_t> alive;
  for (uint32_t j = 0; j < Delta; ++j) alive.insert(j);

  AdversaryResult res;
  for (uint32_t t = 0; t < limit; ++t) {
    bool any_left = false;
    for (uint32_t j : alive)
      if (t < traces[j].size()) any_left = true;
    if (!any_left) break;  // every surviving run ended without reaching the top

    // drop the candidates indexed by this round's row transmitters when few
    // enough transmit for the top station to possibly hear; never empty the
    // family, the protocol has cornered the adversary at that point
    std::set<uint32_t> row;
    for (uint32_t j : alive)
      if (t < traces[j].size())
        for (StationId id : traces[j][t].transmitters)
          if (id >= 2 && id < wid) row.insert(id - 2);
    if (!row.empty() && row.size() <= c) {
      std::set<uint32_t> next = alive;
      for (uint32_t i : row) next.erase(i);
      if (!next.empty()) alive = std::move(next);
    }
    res.family_sizes.push_back(alive.size());

    // histories of the bottom two layers must agree on surviving candidates
    auto lower = [&](uint32_t j) {
      std::pair<TransmissionSet, std::vector<Delivery>> h;
      if (t >= traces[j].size()) return h;
      for (StationId id : traces[j][t].transmitters)
        if (id < wid) h.first.push_back(id);
      for (const auto& dv : traces[j][t].deliveries)
        if (dv.sender < wid && dv.receiver < wid) h.second.push_back(dv);
      return h;
    };
    auto ref = lower(*alive.begin());
    for (uint32_t j : alive)
      if (lower(j) != ref)
        throw std::logic_error("adversary_run: history diverged among surviving candidates");

    for (uint32_t j : alive)
      if (t < traces[j].size())
        for (const auto& dv : traces[j][t].deliveries)
          if (dv.receiver == wid) {
            res.forced_rounds = t;
            res.informed = true;
            return res;
          }
  }
  res.forced_rounds = limit;
  return res;
}

}  // namespace mbc
