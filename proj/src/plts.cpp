#include "pbisim/plts.hpp"

#include <algorithm>
#include <set>

namespace pbisim {

StateId Plts::add_state(std::string name) {
  auto id = static_cast<StateId>(state_names_.size());
  state_index_.emplace(name, id);
  state_names_.push_back(std::move(name));
  outgoing_.emplace_back();
  return id;
}

ActionId Plts::add_action(const std::string& name) {
  if (auto it = action_index_.find(name); it != action_index_.end()) return it->second;
  auto id = static_cast<ActionId>(action_names_.size());
  action_index_.emplace(name, id);
  action_names_.push_back(name);
  return id;
}

void Plts::add_transition(StateId source, ActionId action, Dist target) {
  if (source >= num_states()) throw InvalidInput("unknown source state");
  if (action >= num_actions()) throw InvalidInput("unknown action");
  if (target.empty()) throw InvalidInput("empty target distribution");
  for (const auto& [s, _] : target.entries()) {
    if (s >= num_states()) throw InvalidInput("unknown target state");
  }
  for (std::size_t i : outgoing_[source]) {
    const auto& t = transitions_[i];
    if (t.action == action && t.target == target) return;
  }
  outgoing_[source].push_back(transitions_.size());
  transitions_.push_back({source, action, std::move(target)});
}

std::optional<StateId> Plts::find_state(const std::string& name) const {
  if (auto it = state_index_.find(name); it != state_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<ActionId> Plts::find_action(const std::string& name) const {
  if (auto it = action_index_.find(name); it != action_index_.end()) return it->second;
  return std::nullopt;
}

std::vector<ActionId> Plts::enabled(StateId s) const {
  std::vector<ActionId> out;
  for (std::size_t i : outgoing_.at(s)) out.push_back(transitions_[i].action);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Plts::fully_probabilistic() const {
  for (const auto& out : outgoing_) {
    std::set<ActionId> seen;
    for (std::size_t i : out) {
      if (!seen.insert(transitions_[i].action).second) return false;
    }
  }
  return true;
}

bool Plts::standard() const {
  return std::all_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return t.target.is_dirac(); });
}

}  // namespace pbisim
