#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbisim/distribution.hpp"
#include "pbisim/plts.hpp"

namespace pbisim {

using ControlId = std::uint32_t;
using SymbolId = std::uint32_t;
/// Stack contents with the top symbol at index 0.
using StackString = std::vector<SymbolId>;

struct HeadTarget {
  ControlId control = 0;
  StackString push;  // at most two symbols

  friend auto operator<=>(const HeadTarget&, const HeadTarget&) = default;
};

struct Head {
  ControlId control = 0;
  SymbolId symbol = 0;

  friend auto operator<=>(const Head&, const Head&) = default;
};

struct Rule {
  Head head;
  ActionId action = 0;
  Distribution<HeadTarget> target;
};

enum class ActionClass { Return, Internal, Call };

const char* action_class_name(ActionClass c);

struct Config {
  ControlId control = 0;
  StackString stack;

  friend auto operator<=>(const Config&, const Config&) = default;
};

/// Probabilistic pushdown automaton. Rules are kept in insertion order.
class Ppda {
 public:
  ControlId add_control(const std::string& name);
  SymbolId add_symbol(const std::string& name);
  ActionId add_action(const std::string& name);
  /// Appends a rule; identical rules are stored once.
  void add_rule(Rule rule);

  void set_action_class(ActionId a, ActionClass c);
  bool has_action_partition() const;
  std::optional<ActionClass> action_class(ActionId a) const;

  std::size_t num_controls() const { return control_names_.size(); }
  std::size_t num_symbols() const { return symbol_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }
  const std::string& control_name(ControlId q) const { return control_names_.at(q); }
  const std::string& symbol_name(SymbolId x) const { return symbol_names_.at(x); }
  const std::string& action_name(ActionId a) const { return action_names_.at(a); }
  const std::vector<std::string>& control_names() const { return control_names_; }
  const std::vector<std::string>& symbol_names() const { return symbol_names_; }
  const std::vector<std::string>& action_names() const { return action_names_; }
  std::optional<ControlId> find_control(const std::string& name) const;
  std::optional<SymbolId> find_symbol(const std::string& name) const;
  std::optional<ActionId> find_action(const std::string& name) const;

  const std::vector<Rule>& rules() const { return rules_; }
  /// Indices into rules() with the given head, in insertion order.
  const std::vector<std::size_t>& rules_for(Head h) const;
  bool enables(Head h) const { return !rules_for(h).empty(); }

 private:
  std::vector<std::string> control_names_, symbol_names_, action_names_;
  std::unordered_map<std::string, std::uint32_t> control_index_, symbol_index_, action_index_;
  std::vector<std::optional<ActionClass>> action_classes_;
  std::vector<Rule> rules_;
  std::map<Head, std::vector<std::size_t>> by_head_;
};

struct SubclassReport {
  bool fully_probabilistic = false;
  bool standard = false;
  bool bpa = false;
  bool oca = false;
  bool vpda = false;
  /// For a one-counter machine: the symbols acting as I and Z.
  std::optional<SymbolId> counter_symbol;
  std::optional<SymbolId> bottom_symbol;
  std::vector<std::string> diagnostics;
};

/// Checks each subclass definition. With require_partition, a machine
/// without a complete action partition is rejected instead of reported.
SubclassReport classify(const Ppda& m, bool require_partition = false);

/// Counter/bottom symbols if m is one-counter; throws InvalidInput otherwise.
std::pair<SymbolId, SymbolId> oca_symbols(const Ppda& m);

/// Outgoing transitions of c, one per rule with the head of c.
std::vector<std::pair<ActionId, Distribution<Config>>> step(const Ppda& m, const Config& c);

Config apply_target(const HeadTarget& t, const Config& c);

/// Display form: names concatenated when all are single characters,
/// otherwise separated by '.'.
std::string config_name(const Ppda& m, const Config& c);
std::string target_name(const Ppda& m, const HeadTarget& t);
std::string rule_string(const Ppda& m, const Rule& r);

struct Fragment {
  Plts plts;
  std::vector<Config> configs;      // indexed by StateId
  std::vector<std::size_t> level;   // BFS distance from the roots
  std::vector<StateId> roots;
  std::vector<StateId> frontier;    // states whose successors were not expanded
  std::optional<std::size_t> depth;
  std::map<Config, StateId> index;
};

/// Stored stack symbols allowed per unit of fragment budget.
inline constexpr std::size_t kFragmentSymbolsPerState = 64;

/// Explicit pLTS over the configurations reachable from roots. States at
/// level == depth keep no outgoing transitions. Throws BudgetExceeded once
/// more than budget states, or more than
/// kFragmentSymbolsPerState * budget stack symbols in total, would be created.
Fragment reachable_fragment(const Ppda& m, const std::vector<Config>& roots,
                            std::optional<std::size_t> depth, std::size_t budget);

}  // namespace pbisim
