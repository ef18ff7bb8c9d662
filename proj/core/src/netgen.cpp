#include "mbcast/netgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace mbc {

Metrics compute_metrics(const NetworkInstance& net, const SinrParams& p) {
  net.validate();
  Metrics m;
  if (net.n() == 0) {
    m.connected = true;
    return m;
  }
  auto g = communication_graph(net, p);
  m.connected = g.connected();
  uint32_t diam = 0;
  for (size_t s = 0; s < net.n(); ++s) {
    m.Delta = std::max<uint32_t>(m.Delta, static_cast<uint32_t>(g.adj[s].size()));
    std::vector<int> hop(net.n(), -1);
    std::queue<uint32_t> q;
    q.push(static_cast<uint32_t>(s));
    hop[s] = 0;
    while (!q.empty()) {
      uint32_t u = q.front();
      q.pop();
      for (uint32_t v : g.adj[u])
        if (hop[v] < 0) {
          hop[v] = hop[u] + 1;
          q.push(v);
        }
    }
    for (int h : hop)
      if (h > 0) diam = std::max(diam, static_cast<uint32_t>(h));
  }
  m.D = diam;
  double dmin = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < net.n(); ++a)
    for (size_t b = a + 1; b < net.n(); ++b)
      dmin = std::min(dmin, dist(net.stations[a].pos, net.stations[b].pos));
  m.g = net.n() > 1 ? p.range() / dmin : 0.0;
  return m;
}

NetworkInstance gen_random(uint32_t n, double side, double min_sep, uint64_t seed,
                           const SinrParams& p, uint32_t N) {
  if (!(min_sep > 0.0)) throw std::invalid_argument("min separation must be positive");
  if (N == 0) N = std::max<uint32_t>(8, std::bit_ceil(2 * n));
  if (n > N) throw std::invalid_argument("n exceeds id bound");
  const double r = p.range();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Point> pts;
    bool full = true;
    for (uint32_t i = 0; i < n; ++i) {
      bool placed = false;
      for (int trial = 0; trial < 400 && !placed; ++trial) {
        Point c{u(rng), u(rng)};
        placed = true;
        for (const auto& q : pts) {
          double d = dist(c, q);
          if (d < min_sep || std::abs(d - r) < 1e-9 * r) {
            placed = false;
            break;
          }
        }
        if (placed) pts.push_back(c);
      }
      if (!placed) {
        full = false;
        break;
      }
    }
    if (!full) continue;
    // deterministic id draw from [1, N]
    std::vector<uint32_t> ids(N);
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), rng);
    NetworkInstance net;
    net.N = N;
    for (uint32_t i = 0; i < n; ++i) net.stations.push_back({ids[i], pts[i]});
    std::sort(net.stations.begin(), net.stations.end(),
              [](const Station& a, const Station& b) { return a.id < b.id; });
    net.validate();
    if (n <= 1 || communication_graph(net, p).connected()) return net;
  }
  throw std::runtime_error("gen_random: no connected placement found (density infeasible?)");
}

uint32_t blocking_count(const SinrParams& p) {
  return static_cast<uint32_t>(std::ceil(std::pow(2.0, p.alpha / 2.0))) + 1;
}

NetworkInstance gen_lower_bound_family(uint32_t Delta, uint32_t j, const SinrParams& p) {
  if (Delta < 4) throw std::invalid_argument("Delta must be >= 4");
  if (j >= Delta) throw std::invalid_argument("j out of [0, Delta)");
  if (p.beta != 1.0)
    throw std::invalid_argument("lower-bound family requires beta == 1 (blocking argument)");
  const double r = p.range(), gamma = p.cell();
  NetworkInstance net;
  net.N = std::max<uint32_t>(8, std::bit_ceil(2 * (Delta + 2)));
  net.stations.push_back({1, {0.0, 0.0}});  // source s
  for (uint32_t i = 0; i < Delta; ++i)
    net.stations.push_back({2 + i, {gamma * double(i) / Delta, gamma}});
  const StationId wid = Delta + 2;
  net.stations.push_back({wid, {gamma * double(j) / Delta, gamma + r * (1.0 - 1e-9)}});
  // top station pulled a hair inside range so the closed boundary never
  // depends on rounding of gamma + r
  net.validate();

  // property checks via the reception oracle
  for (uint32_t i = 0; i < Delta; ++i)
    if (!receives(1, 2 + i, {1}, net, p))
      throw std::runtime_error("lower-bound family: row station out of source range");
  for (uint32_t i = 0; i < Delta; ++i) {
    bool adj = receives(2 + i, wid, {2 + i}, net, p);
    if (adj != (i == j))
      throw std::runtime_error("lower-bound family: top station adjacency broken");
  }
  if (receives(1, wid, {1}, net, p))
    throw std::runtime_error("lower-bound family: top station hears the source directly");
  // every blocking_count-sized row subset silences w (supersets follow by
  // interference monotonicity)
  const uint32_t c1 = blocking_count(p);
  if (Delta >= c1) {
    std::vector<uint32_t> pick(c1);
    std::vector<uint32_t> idx(Delta);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<uint32_t> comb(c1, 0);
    // iterate combinations of row indices of size c1
    std::function<bool(uint32_t, uint32_t)> rec = [&](uint32_t start, uint32_t depth) {
      if (depth == c1) {
        TransmissionSet tx;
        for (uint32_t t = 0; t < c1; ++t) tx.push_back(2 + comb[t]);
        std::sort(tx.begin(), tx.end());
        for (StationId v : tx)
          if (receives(v, wid, tx, net, p)) return false;
        return true;
      }
      for (uint32_t i = start; i < Delta; ++i) {
        comb[depth] = i;
        if (!rec(i + 1, depth + 1)) return false;
      }
      return true;
    };
    if (!rec(0, 0))
      throw std::runtime_error("lower-bound family: blocking property failed");
  }
  return net;
}

NetworkInstance chain_networks(uint32_t Delta, uint32_t D, const std::vector<uint32_t>& js,
                               const SinrParams& p) {
  if (D < 3 || D % 2 == 0) throw std::invalid_argument("D must be odd and >= 3");
  const uint32_t links = (D - 1) / 2;
  if (js.size() != links) throw std::invalid_argument("need (D-1)/2 per-link choices");
  const double r = p.range(), gamma = p.cell();
  NetworkInstance net;
  const uint32_t n = links * (Delta + 1) + 1;
  net.N = std::max<uint32_t>(8, std::bit_ceil(2 * n));
  uint32_t next_id = 1;
  Point base{0.0, 0.0};
  net.stations.push_back({next_id++, base});  // shared source of the first copy
  for (uint32_t l = 0; l < links; ++l) {
    uint32_t j = js[l];
    if (j >= Delta) throw std::invalid_argument("link choice out of [0, Delta)");
    for (uint32_t i = 0; i < Delta; ++i)
      net.stations.push_back({next_id++, {base.x + gamma * double(i) / Delta, base.y + gamma}});
    Point top{base.x + gamma * double(j) / Delta, base.y + gamma + r * (1.0 - 1e-9)};
    net.stations.push_back({next_id++, top});  // doubles as the next copy's source
    base = top;
  }
  net.validate();
  return net;
}

}  // namespace mbc
