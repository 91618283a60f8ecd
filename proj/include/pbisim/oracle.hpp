#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"

namespace pbisim::oracle {

using NodeId = std::uint32_t;

struct LazyTransition {
  std::string action;
  Distribution<NodeId> target;
};

/// A possibly infinite pLTS explored on demand. Actions are compared by
/// name, which lets different systems be combined in a disjoint union.
class LazySystem {
 public:
  virtual ~LazySystem() = default;
  virtual const std::vector<LazyTransition>& expand(NodeId n) = 0;
  virtual std::string node_name(NodeId n) const = 0;
};

class PltsSystem : public LazySystem {
 public:
  explicit PltsSystem(const Plts& plts);
  const std::vector<LazyTransition>& expand(NodeId n) override;
  std::string node_name(NodeId n) const override;

 private:
  const Plts& plts_;
  std::deque<std::optional<std::vector<LazyTransition>>> cache_;
};

/// Configurations of a pushdown machine, interned as they are discovered.
class PpdaSystem : public LazySystem {
 public:
  explicit PpdaSystem(const Ppda& m);
  NodeId node(const Config& c);
  const Config& config(NodeId n) const { return configs_.at(n); }
  std::size_t size() const { return configs_.size(); }
  const std::vector<LazyTransition>& expand(NodeId n) override;
  std::string node_name(NodeId n) const override;

 private:
  const Ppda& m_;
  std::vector<Config> configs_;
  std::map<Config, NodeId> index_;
  std::deque<std::optional<std::vector<LazyTransition>>> cache_;
};

/// Disjoint union of several systems; node ids of the parts are remapped.
class UnionSystem : public LazySystem {
 public:
  explicit UnionSystem(std::vector<LazySystem*> parts);
  NodeId lift(std::size_t part, NodeId n);
  std::pair<std::size_t, NodeId> origin(NodeId n) const { return nodes_.at(n); }
  const std::vector<LazyTransition>& expand(NodeId n) override;
  std::string node_name(NodeId n) const override;

 private:
  std::vector<LazySystem*> parts_;
  std::vector<std::pair<std::size_t, NodeId>> nodes_;
  std::map<std::pair<std::size_t, NodeId>, NodeId> index_;
  std::deque<std::optional<std::vector<LazyTransition>>> cache_;
};

/// Evaluates the inductive characterisation literally, with a memo table
/// shared across queries on the same system.
class BoundedOracle {
 public:
  explicit BoundedOracle(LazySystem& system) : system_(system) {}
  bool equiv(NodeId s, NodeId t, std::size_t n);
  /// Least n <= max_n with s and t not n-equivalent.
  std::optional<std::size_t> distinguishing_level(NodeId s, NodeId t, std::size_t max_n);

 private:
  bool dist_equiv(const Distribution<NodeId>& d1, const Distribution<NodeId>& d2, std::size_t n);

  LazySystem& system_;
  std::mutex mutex_;
  std::map<std::tuple<NodeId, NodeId, std::size_t>, bool> memo_;
};

bool bounded_equiv(LazySystem& system, NodeId s, NodeId t, std::size_t n);
bool bounded_equiv(const Plts& plts, StateId s, StateId t, std::size_t n);
bool bounded_equiv(const Ppda& m, const Config& s, const Config& t, std::size_t n);

struct Materialized {
  Plts plts;
  std::vector<NodeId> nodes;            // node of each state
  std::map<NodeId, StateId> state_of;   // inverse
};

/// Explicit pLTS of everything reachable from roots; BudgetExceeded if the
/// reachable part has more than budget nodes.
Materialized materialize(LazySystem& system, const std::vector<NodeId>& roots, std::size_t budget);

bool full_equiv_finite(LazySystem& system, NodeId s, NodeId t, std::size_t budget);
bool full_equiv_finite(const Ppda& m, const Config& s, const Config& t, std::size_t budget);

}  // namespace pbisim::oracle
