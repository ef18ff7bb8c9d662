#include "mbcast/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace mbc {

void Schedule::validate() const {
  const size_t streams = kind == Kind::General ? 1 : size_t(delta) * delta;
  if (kind == Kind::Geometric && delta == 0)
    throw std::invalid_argument("geometric schedule requires delta > 0");
  for (const auto& [id, seqs] : rows) {
    if (seqs.size() != streams) throw std::invalid_argument("missing residue rows");
    for (const auto& s : seqs)
      if (s.size() != T) throw std::invalid_argument("bit sequence length mismatch");
  }
}

bool Schedule::bit(uint32_t id, uint32_t t) const {
  auto it = rows.find(id);
  return it != rows.end() && t < T && it->second[0][t];
}

bool Schedule::bit(uint32_t id, uint32_t a, uint32_t b, uint32_t t) const {
  auto it = rows.find(id);
  return it != rows.end() && t < T && it->second[size_t(a) * delta + b][t];
}

Schedule dilute(const Schedule& s, uint32_t delta) {
  if (delta == 0) throw std::invalid_argument("delta must be positive");
  if (s.kind != Schedule::Kind::General)
    throw std::invalid_argument("dilution expects a general schedule");
  Schedule out;
  out.kind = Schedule::Kind::Geometric;
  out.delta = delta;
  out.T = s.T * delta * delta;
  for (const auto& [id, seqs] : s.rows) {
    auto& dst = out.rows[id];
    dst.assign(size_t(delta) * delta, std::vector<uint8_t>(out.T, 0));
    for (uint32_t t = 1; t <= s.T; ++t) {
      if (!seqs[0][t - 1]) continue;
      for (uint32_t a = 0; a < delta; ++a)
        for (uint32_t b = 0; b < delta; ++b)
          dst[size_t(a) * delta + b][(t - 1) * delta * delta + a * delta + b] = 1;
    }
  }
  return out;
}

double dilution_interference_bound(uint32_t d, const SinrParams& p) {
  // Closed form of sum_{i>=1} 8*(i+1)*(i*d*cell)^(-alpha).
  const double scale = 8.0 * p.power * std::pow(double(d) * p.cell(), -p.alpha);
  return scale * (std::riemann_zeta(p.alpha - 1.0) + std::riemann_zeta(p.alpha));
}

uint32_t safe_dilution_constant(const SinrParams& p) {
  p.validate();
  const double budget = p.epsilon * p.beta * p.noise;
  for (uint32_t d = 2;; ++d) {
    if (dilution_interference_bound(d, p) < budget) return d;
    if (d > 1u << 20) throw std::runtime_error("dilution constant search overflow");
  }
}

}  // namespace mbc
