#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mbcast/net.hpp"
#include "mbcast/oracle.hpp"

namespace mbc {

// Unit-size message: at most one rumor plus declared control bits.
struct Message {
  uint16_t kind = 0;
  std::optional<uint32_t> rumor;
  std::vector<int64_t> fields;
  uint32_t control_bits = 0;  // declared size of kind + fields
  StationId sender = 0;       // stamped by the engine

  bool operator==(const Message&) const = default;
};

struct Delivery {
  StationId sender = 0;
  StationId receiver = 0;
  Message msg;

  bool operator==(const Delivery&) const = default;
};

struct RoundTrace {
  uint32_t round = 0;
  TransmissionSet transmitters;
  std::vector<Delivery> deliveries;
  std::vector<StationId> wakeups;

  bool operator==(const RoundTrace&) const = default;
};

// Newline-delimited export, one record per round. Schema version 1.
void write_trace(std::ostream& out, const std::vector<RoundTrace>& trace);
std::vector<RoundTrace> read_trace(std::istream& in);
std::string trace_to_text(const std::vector<RoundTrace>& trace);

// Recomputes every round's delivery set with the standalone reception oracle
// from the recorded transmitter sets and compares bitwise (sender, receiver)
// pairs. Returns an error description, or empty string if the trace is sound.
std::string audit_trace(const NetworkInstance& net, const SinrParams& p,
                        const std::vector<RoundTrace>& trace);

}  // namespace mbc
