#include "mbcast/trace.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mbc {

namespace {

using nlohmann::json;

json msg_to_json(const Message& m) {
  json j;
  j["kind"] = m.kind;
  if (m.rumor) j["rumor"] = *m.rumor;
  if (!m.fields.empty()) j["fields"] = m.fields;
  j["bits"] = m.control_bits;
  return j;
}

Message msg_from_json(const json& j) {
  Message m;
  m.kind = j.at("kind").get<uint16_t>();
  if (j.contains("rumor")) m.rumor = j.at("rumor").get<uint32_t>();
  if (j.contains("fields")) m.fields = j.at("fields").get<std::vector<int64_t>>();
  m.control_bits = j.at("bits").get<uint32_t>();
  return m;
}

}  // namespace

void write_trace(std::ostream& out, const std::vector<RoundTrace>& trace) {
  for (const auto& rt : trace) {
    json j;
    j["v"] = 1;
    j["round"] = rt.round;
    j["tx"] = rt.transmitters;
    json ds = json::array();
    for (const auto& d : rt.deliveries) {
      json e;
      e["s"] = d.sender;
      e["r"] = d.receiver;
      e["m"] = msg_to_json(d.msg);
      e["m"]["sender"] = d.msg.sender;
      ds.push_back(std::move(e));
    }
    j["rx"] = std::move(ds);
    j["wake"] = rt.wakeups;
    out << j.dump() << '\n';
  }
}

std::vector<RoundTrace> read_trace(std::istream& in) {
  std::vector<RoundTrace> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.at("v").get<int>() != 1) throw std::runtime_error("unsupported trace schema version");
    RoundTrace rt;
    rt.round = j.at("round").get<uint32_t>();
    rt.transmitters = j.at("tx").get<TransmissionSet>();
    for (const auto& e : j.at("rx")) {
      Delivery d;
      d.sender = e.at("s").get<StationId>();
      d.receiver = e.at("r").get<StationId>();
      d.msg = msg_from_json(e.at("m"));
      d.msg.sender = e.at("m").at("sender").get<StationId>();
      rt.deliveries.push_back(std::move(d));
    }
    rt.wakeups = j.at("wake").get<std::vector<StationId>>();
    trace.push_back(std::move(rt));
  }
  return trace;
}

std::string trace_to_text(const std::vector<RoundTrace>& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

std::string audit_trace(const NetworkInstance& net, const SinrParams& p,
                        const std::vector<RoundTrace>& trace) {
  for (const auto& rt : trace) {
    // independent recomputation: try every (transmitter, station) pair
    std::vector<std::pair<StationId, StationId>> expect;
    for (StationId s : rt.transmitters)
      for (const auto& st : net.stations)
        if (st.id != s && receives(s, st.id, rt.transmitters, net, p))
          expect.emplace_back(s, st.id);
    std::vector<std::pair<StationId, StationId>> got;
    for (const auto& d : rt.deliveries) got.emplace_back(d.sender, d.receiver);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got)
      return "delivery mismatch at round " + std::to_string(rt.round) + ": oracle " +
             std::to_string(expect.size()) + " vs trace " + std::to_string(got.size());
    for (const auto& d : rt.deliveries)
      if (d.msg.sender != d.sender)
        return "sender stamp mismatch at round " + std::to_string(rt.round);
  }
  return {};
}

}  // namespace mbc
