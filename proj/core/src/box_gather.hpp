#pragma once

#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "mbcast/protocols.hpp"
#include "proto_util.hpp"

namespace mbc::detail {

// Lockstep in-box tree gather. Every participant replays the identical
// message stream (reception inside the box is guaranteed), so the speaker
// queue agrees everywhere and the current speaker self-identifies. Each
// speaker announces its tree children, then its not-yet-announced rumors,
// then an end marker that hands over to the next queued speaker.
struct BoxGather {
  StationId self = 0;
  uint32_t N = 0;
  bool participant = false;
  bool root = false;
  std::vector<StationId> children;

  bool started = false;
  bool finished = false;
  StationId speaker = 0;
  std::deque<StationId> pending;
  std::set<uint32_t> announced;
  size_t next_child = 0;
  size_t next_rumor = 0;

  void apply(const Message& m, StationId sender) {
    switch (m.kind) {
      case kGatherStart:
        started = true;
        speaker = sender;
        break;
      case kGatherChild:
        pending.push_back(static_cast<StationId>(m.fields.at(0)));
        break;
      case kGatherRumor:
        if (m.rumor) announced.insert(*m.rumor);
        break;
      case kGatherEnd:
        if (pending.empty()) {
          finished = true;
        } else {
          speaker = pending.front();
          pending.pop_front();
        }
        break;
      default:
        break;
    }
  }

  // one call per box block; rec is the caller's held-rumor list
  std::optional<Message> emit(const std::vector<uint32_t>& rec) {
    if (!participant || finished) return std::nullopt;
    Message m;
    if (!started) {
      if (!root) return std::nullopt;
      m = ctrl_msg(kGatherStart, N);
    } else if (speaker != self) {
      return std::nullopt;
    } else if (next_child < children.size()) {
      m = ctrl_msg(kGatherChild, N, {static_cast<int64_t>(children[next_child++])});
    } else {
      while (next_rumor < rec.size() && announced.count(rec[next_rumor])) ++next_rumor;
      if (next_rumor < rec.size()) {
        m = ctrl_msg(kGatherRumor, N);
        m.rumor = rec[next_rumor++];
      } else {
        m = ctrl_msg(kGatherEnd, N);
      }
    }
    apply(m, self);
    return m;
  }
};

}  // namespace mbc::detail
