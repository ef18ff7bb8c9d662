#include "mbcast/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace mbc {

namespace {

bool in_set(const TransmissionSet& txset, StationId id) {
  return std::binary_search(txset.begin(), txset.end(), id);
}

double rx_power(const Point& from, const Point& to, const SinrParams& p) {
  double d = dist(from, to);
  if (d == 0.0) throw std::invalid_argument("degenerate geometry");
  return p.power * std::pow(d, -p.alpha);
}

}  // namespace

double sinr_value(StationId sender, StationId receiver, const TransmissionSet& txset,
                  const NetworkInstance& net, const SinrParams& p) {
  if (sender == receiver) throw std::invalid_argument("sender equals receiver");
  if (!in_set(txset, sender)) throw std::invalid_argument("sender not in transmission set");
  if (in_set(txset, receiver)) throw std::invalid_argument("receiver in transmission set");
  const Point& rcv = net.station(receiver).pos;
  double signal = rx_power(net.station(sender).pos, rcv, p);
  double interference = 0.0;
  for (StationId w : txset)
    if (w != sender) interference += rx_power(net.station(w).pos, rcv, p);
  return signal / (p.noise + interference);
}

bool receives(StationId sender, StationId receiver, const TransmissionSet& txset,
              const NetworkInstance& net, const SinrParams& p) {
  if (sender == receiver) return false;
  if (!in_set(txset, sender)) return false;
  if (in_set(txset, receiver)) return false;  // half duplex
  const Point& rcv = net.station(receiver).pos;
  // Condition (a): solo power >= (1+eps)*beta*noise, evaluated as the
  // equivalent distance comparison so the closed boundary is float-stable.
  if (dist(net.station(sender).pos, rcv) > p.range()) return false;
  return sinr_value(sender, receiver, txset, net, p) >= p.beta;
}

bool Graph::connected() const {
  if (ids.empty()) return true;
  std::vector<char> seen(ids.size(), 0);
  std::queue<uint32_t> q;
  q.push(0);
  seen[0] = 1;
  size_t cnt = 1;
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop();
    for (uint32_t v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++cnt;
        q.push(v);
      }
  }
  return cnt == ids.size();
}

Graph communication_graph(const NetworkInstance& net, const SinrParams& p) {
  net.validate();
  Graph g;
  g.ids.reserve(net.n());
  for (const auto& s : net.stations) g.ids.push_back(s.id);
  g.adj.assign(net.n(), {});
  const double r = p.range();
  for (size_t a = 0; a < net.n(); ++a)
    for (size_t b = a + 1; b < net.n(); ++b)
      if (dist(net.stations[a].pos, net.stations[b].pos) <= r) {
        g.adj[a].push_back(static_cast<uint32_t>(b));
        g.adj[b].push_back(static_cast<uint32_t>(a));
      }
  return g;
}

}  // namespace mbc
