#include "pbisim/refine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pbisim {

LumpedDist lump(const Dist& d, const Partition& p) {
  std::map<std::size_t, Rational> acc;
  for (const auto& [s, w] : d.entries()) {
    if (!p.indexes(s)) throw InvalidInput("state " + std::to_string(s) + " not indexed by partition");
    acc[p.block_of(s)] += w;
  }
  return {acc.begin(), acc.end()};
}

bool dist_equiv(const Dist& d1, const Dist& d2, const Partition& p) {
  return lump(d1, p) == lump(d2, p);
}

Partition refine_step(const Plts& plts, const Partition& p) {
  if (p.num_states() != plts.num_states()) {
    throw InvalidInput("partition does not cover the system");
  }
  using Signature = std::set<std::pair<ActionId, LumpedDist>>;
  std::vector<std::pair<std::size_t, Signature>> labels(plts.num_states());
  for (StateId s = 0; s < plts.num_states(); ++s) {
    labels[s].first = p.block_of(s);
    for (std::size_t i : plts.outgoing(s)) {
      const auto& t = plts.transitions()[i];
      labels[s].second.emplace(t.action, lump(t.target, p));
    }
  }
  return Partition::from_labels(labels);
}

Partition sim_n(const Plts& plts, std::size_t n) {
  Partition p = Partition::trivial(plts.num_states());
  for (std::size_t i = 0; i < n; ++i) {
    Partition next = refine_step(plts, p);
    if (next == p) break;  // stable from here on
    p = std::move(next);
  }
  return p;
}

std::vector<Partition> sim_sequence(const Plts& plts, std::size_t max_n) {
  std::vector<Partition> out{Partition::trivial(plts.num_states())};
  for (std::size_t i = 0; i < max_n; ++i) out.push_back(refine_step(plts, out.back()));
  return out;
}

Partition bisim_finite(const Plts& plts) {
  Partition p = Partition::trivial(plts.num_states());
  while (true) {
    Partition next = refine_step(plts, p);
    if (next.num_blocks() == p.num_blocks()) return p;
    p = std::move(next);
  }
}

std::size_t stabilization_index(const Plts& plts) {
  Partition p = Partition::trivial(plts.num_states());
  for (std::size_t n = 0;; ++n) {
    Partition next = refine_step(plts, p);
    if (next.num_blocks() == p.num_blocks()) return n;
    p = std::move(next);
  }
}

}  // namespace pbisim
