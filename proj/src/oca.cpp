#include "pbisim/oca.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "pbisim/error.hpp"

namespace pbisim::oca {

namespace {

std::size_t num_i(const HeadTarget& t, SymbolId i) {
  return static_cast<std::size_t>(std::count(t.push.begin(), t.push.end(), i));
}

}  // namespace

std::string counter_name(const Ppda& m, const CounterConfig& c) {
  auto [i, z] = oca_symbols(m);
  std::string out = m.control_name(c.p);
  if (c.m == 1) out += m.symbol_name(i);
  else if (c.m > 1) out += m.symbol_name(i) + "^" + std::to_string(c.m);
  return out + m.symbol_name(z);
}

Config to_config(const Ppda& m, const CounterConfig& c) {
  auto [i, z] = oca_symbols(m);
  Config out{c.p, StackString(c.m, i)};
  out.stack.push_back(z);
  return out;
}

CounterConfig from_config(const Ppda& m, const Config& c) {
  auto [i, z] = oca_symbols(m);
  if (c.stack.empty() || c.stack.back() != z) throw InvalidInput("counter configuration must end with the bottom symbol");
  for (std::size_t k = 0; k + 1 < c.stack.size(); ++k) {
    if (c.stack[k] != i) throw InvalidInput("counter configuration must have the shape q I^m Z");
  }
  return {c.control, c.stack.size() - 1};
}

Plts underlying(const Ppda& m) {
  auto [i, z] = oca_symbols(m);
  (void)z;
  Plts out;
  for (const auto& name : m.control_names()) out.add_state(name);
  for (const auto& name : m.action_names()) out.add_action(name);
  for (const auto& r : m.rules()) {
    if (r.head.symbol != i) continue;
    out.add_transition(r.head.control, r.action,
                       r.target.map([](const HeadTarget& t) { return static_cast<StateId>(t.control); }));
  }
  return out;
}

OcaSystem::OcaSystem(const Ppda& m) : m_(m) {
  auto [i, z] = oca_symbols(m);
  i_ = i;
  z_ = z;
}

oracle::NodeId OcaSystem::node(const CounterConfig& c) {
  if (c.p >= m_.num_controls()) throw InvalidInput("unknown control state in counter configuration");
  auto [it, fresh] = index_.emplace(c, static_cast<oracle::NodeId>(configs_.size()));
  if (fresh) {
    configs_.push_back(c);
    cache_.emplace_back();
  }
  return it->second;
}

std::vector<std::pair<ActionId, Distribution<CounterConfig>>> OcaSystem::step(const CounterConfig& c) const {
  std::vector<std::pair<ActionId, Distribution<CounterConfig>>> out;
  const Head head{c.p, c.m > 0 ? i_ : z_};
  for (std::size_t k : m_.rules_for(head)) {
    const Rule& r = m_.rules()[k];
    const SymbolId i = i_;
    const std::uint64_t base = c.m > 0 ? c.m - 1 : 0;
    out.emplace_back(r.action, r.target.map([&](const HeadTarget& t) {
      return CounterConfig{t.control, base + num_i(t, i)};
    }));
  }
  return out;
}

const std::vector<oracle::LazyTransition>& OcaSystem::expand(oracle::NodeId n) {
  if (!cache_.at(n)) {
    std::vector<oracle::LazyTransition> out;
    for (auto& [a, d] : step(configs_.at(n))) {
      out.push_back({m_.action_name(a), d.map([&](const CounterConfig& c) { return node(c); })});
    }
    cache_[n] = std::move(out);
  }
  return *cache_[n];
}

std::string OcaSystem::node_name(oracle::NodeId n) const { return counter_name(m_, configs_.at(n)); }

std::uint64_t inc_bound(const Ppda& m, IncOptions options) {
  const std::uint64_t k = m.num_controls();
  return options.conservative_bound ? 3 * k : k;
}

std::set<CounterConfig> inc_set(const Ppda& m, IncOptions options) {
  const std::size_t k = m.num_controls();
  Plts base = underlying(m);
  OcaSystem counters(m);
  oracle::PltsSystem finite(base);
  oracle::UnionSystem both({&counters, &finite});
  oracle::BoundedOracle oracle(both);
  std::set<CounterConfig> out;
  const std::uint64_t bound = inc_bound(m, options);
  for (ControlId p = 0; p < k; ++p) {
    for (std::uint64_t c = 0; c < bound; ++c) {
      oracle::NodeId s = both.lift(0, counters.node({p, c}));
      bool incompatible = true;
      for (StateId q = 0; q < k && incompatible; ++q) {
        incompatible = !oracle.equiv(s, both.lift(1, q), k);
      }
      if (incompatible) out.insert({p, c});
    }
  }
  return out;
}

DistResult dist_inc(const Ppda& m, const std::set<CounterConfig>& inc, const CounterConfig& c,
                    std::uint64_t cap, std::size_t budget) {
  const std::uint64_t limit = std::max<std::uint64_t>(c.m, 3 * m.num_controls()) + cap;
  OcaSystem sys(m);
  std::map<CounterConfig, std::size_t> seen{{c, 0}};
  std::deque<CounterConfig> queue{c};
  bool truncated = false;
  while (!queue.empty()) {
    CounterConfig cur = queue.front();
    queue.pop_front();
    const std::size_t d = seen[cur];
    if (inc.count(cur)) return {d, false};
    for (const auto& [a, dist] : sys.step(cur)) {
      for (const auto& [next, _] : dist.entries()) {
        if (next.m > limit) {
          truncated = true;
          continue;
        }
        if (seen.count(next)) continue;
        if (seen.size() >= budget) {
          truncated = true;
          continue;
        }
        seen.emplace(next, d + 1);
        queue.push_back(next);
      }
    }
  }
  return {std::nullopt, !truncated};
}

FilterResult not_bisim_filter(const Ppda& m, const CounterConfig& c1, const CounterConfig& c2,
                              std::uint64_t cap, IncOptions options) {
  auto inc = inc_set(m, options);
  FilterResult out;
  out.left = dist_inc(m, inc, c1, cap);
  out.right = dist_inc(m, inc, c2, cap);
  auto show = [](const DistResult& r) {
    if (r.distance) return std::to_string(*r.distance);
    return std::string(r.exhausted ? "infinite" : "unknown");
  };
  const auto& l = out.left;
  const auto& r = out.right;
  bool differ = (l.distance && r.distance && *l.distance != *r.distance) ||
                (l.distance && !r.distance && r.exhausted) || (!l.distance && l.exhausted && r.distance);
  if (differ) out.verdict = FilterVerdict::NotBisimilar;
  out.evidence = "distance to INC: " + counter_name(m, c1) + " " + show(l) + ", " + counter_name(m, c2) +
                 " " + show(r);
  return out;
}

}  // namespace pbisim::oca
