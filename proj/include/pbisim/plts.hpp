#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbisim/distribution.hpp"

namespace pbisim {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using Dist = Distribution<StateId>;

struct Transition {
  StateId source;
  ActionId action;
  Dist target;
};

/// Explicit finite probabilistic labelled transition system.
class Plts {
 public:
  StateId add_state(std::string name);
  /// Returns the existing id when an action of that name is already known.
  ActionId add_action(const std::string& name);
  /// Identical transitions are stored once.
  void add_transition(StateId source, ActionId action, Dist target);

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::string& action_name(ActionId a) const { return action_names_.at(a); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& action_names() const { return action_names_; }

  /// First state carrying the name.
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<ActionId> find_action(const std::string& name) const;

  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Indices into transitions() of the transitions leaving s, in insertion order.
  const std::vector<std::size_t>& outgoing(StateId s) const { return outgoing_.at(s); }

  /// Sorted, duplicate-free list of actions enabled in s.
  std::vector<ActionId> enabled(StateId s) const;

  bool fully_probabilistic() const;
  bool standard() const;

 private:
  std::vector<std::string> state_names_;
  std::unordered_map<std::string, StateId> state_index_;
  std::vector<std::string> action_names_;
  std::unordered_map<std::string, ActionId> action_index_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
};

}  // namespace pbisim
