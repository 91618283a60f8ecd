#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pbisim/oracle.hpp"
#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"

namespace pbisim::oca {

/// Configuration p I^m Z.
struct CounterConfig {
  ControlId p = 0;
  std::uint64_t m = 0;
  friend auto operator<=>(const CounterConfig&, const CounterConfig&) = default;
};

std::string counter_name(const Ppda& m, const CounterConfig& c);
Config to_config(const Ppda& m, const CounterConfig& c);
/// Throws InvalidInput unless c has the shape q I^m Z.
CounterConfig from_config(const Ppda& m, const Config& c);

/// The machine with a counter that never reaches zero. State q of the
/// result is control state q.
Plts underlying(const Ppda& m);

/// Counter configurations with the counter kept as a number, so large
/// values never become long stacks.
class OcaSystem : public oracle::LazySystem {
 public:
  explicit OcaSystem(const Ppda& m);
  oracle::NodeId node(const CounterConfig& c);
  const CounterConfig& config(oracle::NodeId n) const { return configs_.at(n); }
  const std::vector<oracle::LazyTransition>& expand(oracle::NodeId n) override;
  std::string node_name(oracle::NodeId n) const override;
  /// Successor configurations with their actions and probabilities.
  std::vector<std::pair<ActionId, Distribution<CounterConfig>>> step(const CounterConfig& c) const;

 private:
  const Ppda& m_;
  SymbolId i_, z_;
  std::vector<CounterConfig> configs_;
  std::map<CounterConfig, oracle::NodeId> index_;
  std::deque<std::optional<std::vector<oracle::LazyTransition>>> cache_;
};

struct IncOptions {
  /// Test counters below 3k instead of k, where k is the number of control states.
  bool conservative_bound = false;
};

/// Configurations p I^m Z not k-equivalent to any state of underlying(m).
std::set<CounterConfig> inc_set(const Ppda& m, IncOptions options = {});

/// Counter bound below which inc_set searches.
std::uint64_t inc_bound(const Ppda& m, IncOptions options = {});

struct DistResult {
  std::optional<std::size_t> distance;
  /// No path exists at all: the search saw every reachable configuration.
  bool exhausted = false;
};

constexpr std::size_t kDefaultDistBudget = 200000;

/// Shortest macrostep distance from c to inc, exploring counters up to
/// max(c.m, 3k) + cap.
DistResult dist_inc(const Ppda& m, const std::set<CounterConfig>& inc, const CounterConfig& c,
                    std::uint64_t cap, std::size_t budget = kDefaultDistBudget);

enum class FilterVerdict { NotBisimilar, Unknown };

struct FilterResult {
  FilterVerdict verdict = FilterVerdict::Unknown;
  DistResult left, right;
  std::string evidence;
};

/// Sound necessary-condition check; never reports bisimilarity.
FilterResult not_bisim_filter(const Ppda& m, const CounterConfig& c1, const CounterConfig& c2,
                              std::uint64_t cap, IncOptions options = {});

}  // namespace pbisim::oca
