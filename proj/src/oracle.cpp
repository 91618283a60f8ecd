#include "pbisim/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pbisim/refine.hpp"

namespace pbisim::oracle {

PltsSystem::PltsSystem(const Plts& plts) : plts_(plts), cache_(plts.num_states()) {}

const std::vector<LazyTransition>& PltsSystem::expand(NodeId n) {
  auto& slot = cache_.at(n);
  if (!slot) {
    slot.emplace();
    for (std::size_t i : plts_.outgoing(n)) {
      const auto& t = plts_.transitions()[i];
      slot->push_back({plts_.action_name(t.action), t.target});
    }
  }
  return *slot;
}

std::string PltsSystem::node_name(NodeId n) const { return plts_.state_name(n); }

PpdaSystem::PpdaSystem(const Ppda& m) : m_(m) {}

NodeId PpdaSystem::node(const Config& c) {
  if (auto it = index_.find(c); it != index_.end()) return it->second;
  auto id = static_cast<NodeId>(configs_.size());
  configs_.push_back(c);
  index_.emplace(c, id);
  cache_.emplace_back();
  return id;
}

const std::vector<LazyTransition>& PpdaSystem::expand(NodeId n) {
  if (!cache_.at(n)) {
    std::vector<LazyTransition> out;
    Config c = configs_.at(n);
    for (auto& [a, d] : step(m_, c)) {
      out.push_back({m_.action_name(a), d.map([&](const Config& c2) { return node(c2); })});
    }
    cache_[n] = std::move(out);
  }
  return *cache_[n];
}

std::string PpdaSystem::node_name(NodeId n) const { return config_name(m_, configs_.at(n)); }

UnionSystem::UnionSystem(std::vector<LazySystem*> parts) : parts_(std::move(parts)) {}

NodeId UnionSystem::lift(std::size_t part, NodeId n) {
  auto key = std::make_pair(part, n);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(key);
  index_.emplace(key, id);
  cache_.emplace_back();
  return id;
}

const std::vector<LazyTransition>& UnionSystem::expand(NodeId n) {
  if (!cache_.at(n)) {
    auto [part, inner] = nodes_.at(n);
    std::vector<LazyTransition> out;
    for (const auto& t : parts_.at(part)->expand(inner)) {
      out.push_back({t.action, t.target.map([&, part = part](NodeId x) { return lift(part, x); })});
    }
    cache_[n] = std::move(out);
  }
  return *cache_[n];
}

std::string UnionSystem::node_name(NodeId n) const {
  auto [part, inner] = nodes_.at(n);
  return parts_.at(part)->node_name(inner);
}

bool BoundedOracle::equiv(NodeId s, NodeId t, std::size_t n) {
  if (n == 0 || s == t) return true;
  auto key = std::make_tuple(std::min(s, t), std::max(s, t), n);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const auto& ts = system_.expand(s);
  const auto& tt = system_.expand(t);
  auto matched = [&](const std::vector<LazyTransition>& from, const std::vector<LazyTransition>& to) {
    for (const auto& x : from) {
      bool found = false;
      for (const auto& y : to) {
        if (x.action == y.action && dist_equiv(x.target, y.target, n - 1)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  std::set<std::string> as, at;
  for (const auto& x : ts) as.insert(x.action);
  for (const auto& y : tt) at.insert(y.action);
  bool result = as == at && matched(ts, tt) && matched(tt, ts);
  std::lock_guard lock(mutex_);
  memo_.emplace(key, result);
  return result;
}

bool BoundedOracle::dist_equiv(const Distribution<NodeId>& d1, const Distribution<NodeId>& d2,
                               std::size_t n) {
  if (n == 0) return true;
  if (d1 == d2) return true;
  std::vector<NodeId> nodes = d1.support();
  for (NodeId x : d2.support()) nodes.push_back(x);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  // group the union of supports into classes of the level-n relation
  std::vector<NodeId> reps;
  std::vector<std::pair<Rational, Rational>> masses;
  for (NodeId x : nodes) {
    std::size_t c = 0;
    while (c < reps.size() && !equiv(reps[c], x, n)) ++c;
    if (c == reps.size()) {
      reps.push_back(x);
      masses.emplace_back();
    }
    masses[c].first += d1.mass(x);
    masses[c].second += d2.mass(x);
  }
  return std::all_of(masses.begin(), masses.end(), [](const auto& m) { return m.first == m.second; });
}

std::optional<std::size_t> BoundedOracle::distinguishing_level(NodeId s, NodeId t, std::size_t max_n) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (!equiv(s, t, n)) return n;
  }
  return std::nullopt;
}

bool bounded_equiv(LazySystem& system, NodeId s, NodeId t, std::size_t n) {
  return BoundedOracle(system).equiv(s, t, n);
}

bool bounded_equiv(const Plts& plts, StateId s, StateId t, std::size_t n) {
  PltsSystem sys(plts);
  return bounded_equiv(sys, s, t, n);
}

bool bounded_equiv(const Ppda& m, const Config& s, const Config& t, std::size_t n) {
  PpdaSystem sys(m);
  NodeId a = sys.node(s);
  NodeId b = sys.node(t);
  return bounded_equiv(sys, a, b, n);
}

Materialized materialize(LazySystem& system, const std::vector<NodeId>& roots, std::size_t budget) {
  Materialized out;
  std::deque<NodeId> queue;
  auto state_of = [&](NodeId n) {
    if (auto it = out.state_of.find(n); it != out.state_of.end()) return it->second;
    if (out.nodes.size() >= budget) {
      throw BudgetExceeded("reachable part exceeds budget of " + std::to_string(budget) + " states",
                           out.nodes.size());
    }
    StateId s = out.plts.add_state(system.node_name(n));
    out.nodes.push_back(n);
    out.state_of.emplace(n, s);
    queue.push_back(n);
    return s;
  };
  for (NodeId r : roots) state_of(r);
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    StateId s = out.state_of.at(n);
    for (const auto& t : system.expand(n)) {
      ActionId a = out.plts.add_action(t.action);
      out.plts.add_transition(s, a, t.target.map([&](NodeId x) { return state_of(x); }));
    }
  }
  return out;
}

bool full_equiv_finite(LazySystem& system, NodeId s, NodeId t, std::size_t budget) {
  Materialized mat = materialize(system, {s, t}, budget);
  Partition p = bisim_finite(mat.plts);
  return p.same_block(mat.state_of.at(s), mat.state_of.at(t));
}

bool full_equiv_finite(const Ppda& m, const Config& s, const Config& t, std::size_t budget) {
  PpdaSystem sys(m);
  NodeId a = sys.node(s);
  NodeId b = sys.node(t);
  return full_equiv_finite(sys, a, b, budget);
}

}  // namespace pbisim::oracle
