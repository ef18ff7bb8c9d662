#include "mbcast/net.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mbc {

void NetworkInstance::validate() const {
  if (stations.size() > N) throw std::invalid_argument("n exceeds id bound N");
  std::set<StationId> ids;
  for (const auto& s : stations) {
    if (s.id < 1 || s.id > N) throw std::invalid_argument("station id out of [1,N]");
    if (!ids.insert(s.id).second) throw std::invalid_argument("duplicate station id");
  }
  for (size_t a = 0; a < stations.size(); ++a)
    for (size_t b = a + 1; b < stations.size(); ++b)
      if (stations[a].pos.x == stations[b].pos.x && stations[a].pos.y == stations[b].pos.y)
        throw std::invalid_argument("coincident station positions");
}

size_t NetworkInstance::index_of(StationId id) const {
  for (size_t i = 0; i < stations.size(); ++i)
    if (stations[i].id == id) return i;
  throw std::out_of_range("unknown station id");
}

std::unordered_map<StationId, size_t> NetworkInstance::id_index() const {
  std::unordered_map<StationId, size_t> m;
  m.reserve(stations.size());
  for (size_t i = 0; i < stations.size(); ++i) m.emplace(stations[i].id, i);
  return m;
}

std::string to_text(const NetworkInstance& net, const SinrParams& p) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(12);
  os << "NET " << net.n() << ' ' << net.N << ' ' << p.range() << '\n';
  for (const auto& s : net.stations)
    os << s.id << ' ' << s.pos.x << ' ' << s.pos.y << '\n';
  return os.str();
}

NetworkInstance net_from_text(std::istream& in) {
  std::string tag;
  size_t n = 0;
  NetworkInstance net;
  double r = 0.0;
  if (!(in >> tag >> n >> net.N >> r) || tag != "NET")
    throw std::runtime_error("malformed instance header");
  net.stations.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Station s;
    if (!(in >> s.id >> s.pos.x >> s.pos.y))
      throw std::runtime_error("malformed station line");
    net.stations.push_back(s);
  }
  net.validate();
  return net;
}

NetworkInstance load_net(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  return net_from_text(f);
}

void save_net(const NetworkInstance& net, const SinrParams& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write instance file: " + path);
  f << to_text(net, p);
}

}  // namespace mbc
