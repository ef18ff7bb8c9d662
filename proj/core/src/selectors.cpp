#include "mbcast/selectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mbc {

namespace {

std::vector<uint32_t> mask_to_set(uint64_t m) {
  std::vector<uint32_t> out;
  while (m) {
    out.push_back(static_cast<uint32_t>(std::countr_zero(m)) + 1);
    m &= m - 1;
  }
  return out;
}

uint64_t set_to_mask(const std::vector<uint32_t>& s) {
  uint64_t m = 0;
  for (uint32_t id : s) m |= 1ull << (id - 1);
  return m;
}

double choose(uint32_t n, uint32_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (uint32_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

std::vector<uint32_t> full_set(uint32_t N) {
  std::vector<uint32_t> s(N);
  for (uint32_t i = 0; i < N; ++i) s[i] = i + 1;
  return s;
}

SetFamily singleton_family(uint32_t N, SetFamily::Kind kind) {
  SetFamily f;
  f.kind = kind;
  f.N = N;
  for (uint32_t i = 1; i <= N; ++i) f.sets.push_back({i});
  return f;
}

// Deterministic candidate pool: pseudorandom density-1/x sets, then singletons.
std::vector<uint64_t> candidate_pool(uint32_t N, uint32_t x, uint64_t salt) {
  std::mt19937_64 rng((uint64_t(N) << 40) ^ (uint64_t(x) << 20) ^ salt);
  std::uniform_int_distribution<uint32_t> coin(0, x - 1);
  std::vector<uint64_t> pool;
  for (int c = 0; c < 192; ++c) {
    uint64_t m = 0;
    for (uint32_t id = 1; id <= N; ++id)
      if (coin(rng) == 0) m |= 1ull << (id - 1);
    if (m) pool.push_back(m);
  }
  for (uint32_t id = 1; id <= N; ++id) pool.push_back(1ull << (id - 1));
  return pool;
}

template <typename Body>
void for_each_subset(uint32_t N, uint32_t x, Body body) {
  if (x > N) return;
  uint64_t v = (x == 64) ? ~0ull : ((1ull << x) - 1);
  uint64_t limit = (N == 64) ? ~0ull : ((1ull << N) - 1);
  while (true) {
    body(v);
    if (x == 0) break;
    // Gosper's hack
    uint64_t c = v & (~v + 1), r = v + c;
    uint64_t next = (((r ^ v) >> 2) / c) | r;
    if (next > limit || next < v) break;
    v = next;
  }
}

SetFamily greedy_ssf(uint32_t N, uint32_t x) {
  struct Dem {
    uint64_t Z;
    uint64_t unsat;
  };
  std::vector<Dem> demands;
  for_each_subset(N, x, [&](uint64_t Z) { demands.push_back({Z, Z}); });
  auto pool = candidate_pool(N, x, 0x55f);
  SetFamily f;
  f.kind = SetFamily::Kind::Ssf;
  f.N = N;
  f.x = x;
  while (!demands.empty()) {
    size_t best = 0;
    long best_gain = -1;
    for (size_t c = 0; c < pool.size(); ++c) {
      long gain = 0;
      for (const auto& d : demands) {
        uint64_t w = pool[c] & d.Z;
        if (std::has_single_bit(w) && (w & d.unsat)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    uint64_t chosen = pool[best];
    f.sets.push_back(mask_to_set(chosen));
    size_t keep = 0;
    for (auto& d : demands) {
      uint64_t w = chosen & d.Z;
      if (std::has_single_bit(w)) d.unsat &= ~w;
      if (d.unsat) demands[keep++] = d;
    }
    demands.resize(keep);
  }
  return f;
}

SetFamily greedy_selector(uint32_t N, uint32_t x, uint32_t y) {
  struct Dem {
    uint64_t A;
    uint64_t isolated;
  };
  std::vector<Dem> demands;
  for_each_subset(N, x, [&](uint64_t A) { demands.push_back({A, 0}); });
  auto pool = candidate_pool(N, x, 0x5e1);
  pool.insert(pool.begin(), N == 64 ? ~0ull : ((1ull << N) - 1));
  SetFamily f;
  f.kind = SetFamily::Kind::Selector;
  f.N = N;
  f.x = x;
  f.y = y;
  while (!demands.empty()) {
    size_t best = 0;
    long best_gain = -1;
    for (size_t c = 0; c < pool.size(); ++c) {
      long gain = 0;
      for (const auto& d : demands) {
        uint64_t w = pool[c] & d.A;
        if (std::has_single_bit(w) && !(w & d.isolated)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    uint64_t chosen = pool[best];
    f.sets.push_back(mask_to_set(chosen));
    size_t keep = 0;
    for (auto& d : demands) {
      uint64_t w = chosen & d.A;
      if (std::has_single_bit(w)) d.isolated |= w;
      if (std::popcount(d.isolated) < y) demands[keep++] = d;
    }
    demands.resize(keep);
  }
  return f;
}

std::vector<uint32_t> primes_upto(uint32_t limit) {
  std::vector<char> comp(limit + 1, 0);
  std::vector<uint32_t> primes;
  for (uint32_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    primes.push_back(i);
    for (uint64_t j = uint64_t(i) * i; j <= limit; j += i) comp[j] = 1;
  }
  return primes;
}

}  // namespace

SetFamily prime_ssf(uint32_t N, uint32_t x) {
  if (x < 1 || x > N) throw std::invalid_argument("require 1 <= x <= N");
  if (x == 1) {
    SetFamily f;
    f.kind = SetFamily::Kind::Ssf;
    f.N = N;
    f.x = x;
    f.sets.push_back(full_set(N));
    return f;
  }
  if (x >= N) {
    auto f = singleton_family(N, SetFamily::Kind::Ssf);
    f.x = x;
    return f;
  }
  auto primes = primes_upto(std::max(64u, 4 * N + 200));
  // Pick the starting prime minimizing total nonempty residue classes. With
  // start q, any difference in [1, N-1] has at most t = max{e : q^e <= N-1}
  // prime factors >= q, so (x-1)*t + 1 primes from q upward suffice.
  uint64_t best_cost = ~0ull;
  size_t best_i = 0, best_m = 0;
  for (size_t i = 0; i < primes.size(); ++i) {
    uint32_t q = primes[i];
    uint32_t t = 0;
    uint64_t pw = q;
    while (pw <= N - 1) {
      ++t;
      pw *= q;
    }
    size_t m = size_t(x - 1) * t + 1;
    if (i + m > primes.size()) continue;
    uint64_t cost = 0;
    for (size_t j = i; j < i + m; ++j) cost += std::min<uint64_t>(primes[j], N);
    if (cost < best_cost) {
      best_cost = cost;
      best_i = i;
      best_m = m;
    }
    if (t == 0) break;  // larger q cannot improve
  }
  SetFamily f;
  f.kind = SetFamily::Kind::Ssf;
  f.N = N;
  f.x = x;
  for (size_t j = best_i; j < best_i + best_m; ++j) {
    uint32_t p = primes[j];
    for (uint32_t a = 0; a < p; ++a) {
      std::vector<uint32_t> s;
      for (uint32_t id = (a == 0) ? p : a; id <= N; id += p) s.push_back(id);
      if (!s.empty()) f.sets.push_back(std::move(s));
    }
  }
  return f;
}

SetFamily build_ssf(uint32_t N, uint32_t x) {
  if (x < 1 || x > N) throw std::invalid_argument("require 1 <= x <= N");
  if (x == 1) {
    SetFamily f;
    f.kind = SetFamily::Kind::Ssf;
    f.N = N;
    f.x = x;
    f.sets.push_back(full_set(N));
    return f;
  }
  if (x >= N) {
    auto f = singleton_family(N, SetFamily::Kind::Ssf);
    f.x = x;
    return f;
  }
  if (N <= 64 && choose(N, x) * x <= 150000.0) return greedy_ssf(N, x);
  return prime_ssf(N, x);
}

SetFamily build_selector(uint32_t N, uint32_t x, uint32_t y) {
  if (y < 1 || y > x || x > N) throw std::invalid_argument("require 1 <= y <= x <= N");
  if (N > 64 || choose(N, x) > 2e6)
    throw std::invalid_argument("selector demands too large to enumerate");
  return greedy_selector(N, x, y);
}

bool SetFamily::contains(size_t set_idx, uint32_t id) const {
  if (!masks.empty()) {
    const auto& blk = masks[set_idx];
    size_t w = (id - 1) / 64;
    return w < blk.size() && (blk[w] >> ((id - 1) % 64)) & 1;
  }
  const auto& s = sets[set_idx];
  return std::binary_search(s.begin(), s.end(), id);
}

void SetFamily::finalize() {
  masks.assign(sets.size(), std::vector<uint64_t>((N + 63) / 64, 0));
  for (size_t i = 0; i < sets.size(); ++i)
    for (uint32_t id : sets[i]) masks[i][(id - 1) / 64] |= 1ull << ((id - 1) % 64);
}

void SetFamily::validate() const {
  for (const auto& s : sets) {
    if (!std::is_sorted(s.begin(), s.end())) throw std::invalid_argument("set not sorted");
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 1 || s[i] > N) throw std::invalid_argument("set element out of [1,N]");
      if (i && s[i] == s[i - 1]) throw std::invalid_argument("duplicate set element");
    }
  }
}

namespace detail {

bool verify_ssf_enum(const SetFamily& f, uint32_t N, uint32_t x) {
  if (N > 64) throw std::invalid_argument("enumeration verifier needs N <= 64");
  std::vector<uint64_t> sm;
  sm.reserve(f.sets.size());
  for (const auto& s : f.sets) sm.push_back(set_to_mask(s));
  bool ok = true;
  for_each_subset(N, x, [&](uint64_t Z) {
    if (!ok) return;
    uint64_t isolated = 0;
    for (uint64_t m : sm) {
      uint64_t w = m & Z;
      if (std::has_single_bit(w)) isolated |= w;
    }
    if (isolated != Z) ok = false;
  });
  return ok;
}

namespace {

using Blocks = std::vector<uint64_t>;

bool blocks_test(const Blocks& b, uint32_t id) {
  return (b[(id - 1) / 64] >> ((id - 1) % 64)) & 1;
}

int blocks_pop(const Blocks& b) {
  int c = 0;
  for (uint64_t w : b) c += std::popcount(w);
  return c;
}

bool blocks_disjoint(const Blocks& a, const Blocks& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

// Branch and bound: does a hitting set of size <= budget exist for the sets
// indexed by `alive`?
bool hitting_set_exists(const std::vector<Blocks>& sets, std::vector<uint32_t> alive,
                        uint32_t budget) {
  if (alive.empty()) return true;
  if (budget == 0) return false;
  // lower bound: pairwise disjoint alive sets each need their own element
  {
    std::vector<const Blocks*> picked;
    uint32_t lb = 0;
    for (uint32_t idx : alive) {
      bool dis = true;
      for (auto* p : picked)
        if (!blocks_disjoint(*p, sets[idx])) {
          dis = false;
          break;
        }
      if (dis) {
        picked.push_back(&sets[idx]);
        if (++lb > budget) return false;
      }
    }
  }
  // branch on the smallest alive set
  uint32_t pick = alive[0];
  int best = blocks_pop(sets[pick]);
  for (uint32_t idx : alive) {
    int c = blocks_pop(sets[idx]);
    if (c < best) {
      best = c;
      pick = idx;
    }
  }
  const Blocks& chosen = sets[pick];
  for (size_t w = 0; w < chosen.size(); ++w) {
    uint64_t word = chosen[w];
    while (word) {
      uint32_t id = static_cast<uint32_t>(w * 64 + std::countr_zero(word)) + 1;
      word &= word - 1;
      std::vector<uint32_t> rest;
      rest.reserve(alive.size());
      for (uint32_t idx : alive)
        if (!blocks_test(sets[idx], id)) rest.push_back(idx);
      if (hitting_set_exists(sets, std::move(rest), budget - 1)) return true;
    }
  }
  return false;
}

}  // namespace

bool verify_ssf_hitting(const SetFamily& f, uint32_t N, uint32_t x) {
  const size_t words = (N + 63) / 64;
  std::vector<Blocks> sm;
  for (const auto& s : f.sets) {
    Blocks b(words, 0);
    for (uint32_t id : s) b[(id - 1) / 64] |= 1ull << ((id - 1) % 64);
    sm.push_back(std::move(b));
  }
  for (uint32_t z = 1; z <= N; ++z) {
    std::vector<Blocks> with_z;
    bool always = false;
    for (size_t i = 0; i < sm.size(); ++i) {
      if (!blocks_test(sm[i], z)) continue;
      Blocks b = sm[i];
      b[(z - 1) / 64] &= ~(1ull << ((z - 1) % 64));
      if (blocks_pop(b) == 0) {
        always = true;  // the singleton {z} isolates z from everything
        break;
      }
      with_z.push_back(std::move(b));
    }
    if (always) continue;
    if (with_z.empty()) return false;
    // z fails iff <= x-1 blockers can intersect every set containing z
    std::vector<uint32_t> alive(with_z.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<uint32_t>(i);
    if (hitting_set_exists(with_z, std::move(alive), x - 1)) return false;
  }
  return true;
}

}  // namespace detail

bool verify_ssf(const SetFamily& f, uint32_t N, uint32_t x) {
  f.validate();
  if (x < 1 || x > N) return false;
  if (N <= 64 && choose(N, x) * double(std::max<size_t>(f.sets.size(), 1)) <= 2e8)
    return detail::verify_ssf_enum(f, N, x);
  return detail::verify_ssf_hitting(f, N, x);
}

bool verify_selector(const SetFamily& f, uint32_t N, uint32_t x, uint32_t y) {
  f.validate();
  if (y < 1 || y > x || x > N) return false;
  if (N > 64 || choose(N, x) > 5e6)
    throw std::invalid_argument("selector verification too large to enumerate");
  std::vector<uint64_t> sm;
  sm.reserve(f.sets.size());
  for (const auto& s : f.sets) sm.push_back(set_to_mask(s));
  bool ok = true;
  for_each_subset(N, x, [&](uint64_t A) {
    if (!ok) return;
    uint64_t isolated = 0;
    for (uint64_t m : sm) {
      uint64_t w = m & A;
      if (std::has_single_bit(w)) isolated |= w;
    }
    if (static_cast<uint32_t>(std::popcount(isolated)) < y) ok = false;
  });
  return ok;
}

std::string family_to_text(const SetFamily& f) {
  std::ostringstream os;
  if (f.kind == SetFamily::Kind::Ssf)
    os << "SSF " << f.N << ' ' << f.x << ' ' << f.sets.size() << '\n';
  else
    os << "SEL " << f.N << ' ' << f.x << ' ' << f.y << ' ' << f.sets.size() << '\n';
  for (const auto& s : f.sets) {
    for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

SetFamily family_from_text(std::istream& in) {
  std::string tag;
  if (!(in >> tag)) throw std::runtime_error("empty family file");
  SetFamily f;
  size_t len = 0;
  if (tag == "SSF") {
    f.kind = SetFamily::Kind::Ssf;
    if (!(in >> f.N >> f.x >> len)) throw std::runtime_error("malformed SSF header");
  } else if (tag == "SEL") {
    f.kind = SetFamily::Kind::Selector;
    if (!(in >> f.N >> f.x >> f.y >> len)) throw std::runtime_error("malformed SEL header");
  } else {
    throw std::runtime_error("unknown family tag: " + tag);
  }
  in >> std::ws;
  for (size_t i = 0; i < len; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("truncated family file");
    std::istringstream ls(line);
    std::vector<uint32_t> s;
    uint32_t id;
    while (ls >> id) s.push_back(id);
    f.sets.push_back(std::move(s));
  }
  f.validate();
  return f;
}

}  // namespace mbc
