#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbcast/sinr.hpp"

namespace mbc {

using StationId = uint32_t;

struct Station {
  StationId id = 0;  // in [1, N]
  Point pos;
};

struct NetworkInstance {
  uint32_t N = 0;  // id-space bound, n <= N
  std::vector<Station> stations;

  size_t n() const { return stations.size(); }
  void validate() const;  // unique ids in range, pairwise distinct positions
  size_t index_of(StationId id) const;
  const Station& station(StationId id) const { return stations[index_of(id)]; }
  std::unordered_map<StationId, size_t> id_index() const;
};

// Text format, normative for golden instances:
//   NET n N r
//   id x y          (coordinates with 12 decimal places)
std::string to_text(const NetworkInstance& net, const SinrParams& p);
NetworkInstance net_from_text(std::istream& in);
NetworkInstance load_net(const std::string& path);
void save_net(const NetworkInstance& net, const SinrParams& p, const std::string& path);

}  // namespace mbc
