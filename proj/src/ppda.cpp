#include "pbisim/ppda.hpp"

#include <deque>
#include <set>

namespace pbisim {

namespace {

template <class Index>
std::uint32_t intern(std::vector<std::string>& names, Index& index, const std::string& name) {
  if (auto it = index.find(name); it != index.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names.size());
  index.emplace(name, id);
  names.push_back(name);
  return id;
}

template <class Index>
std::optional<std::uint32_t> lookup(const Index& index, const std::string& name) {
  if (auto it = index.find(name); it != index.end()) return it->second;
  return std::nullopt;
}

const std::vector<std::size_t> kNoRules;

bool push_in(const StackString& push, std::initializer_list<StackString> allowed) {
  for (const auto& a : allowed) {
    if (push == a) return true;
  }
  return false;
}

// Checks the one-counter shape with the given roles; returns the first violation.
std::optional<std::string> oca_violation(const Ppda& m, SymbolId i, SymbolId z) {
  for (const auto& r : m.rules()) {
    for (const auto& [t, _] : r.target.entries()) {
      bool ok = r.head.symbol == i ? push_in(t.push, {{}, {i}, {i, i}})
                                   : push_in(t.push, {{z}, {i, z}});
      if (!ok) return "rule " + rule_string(m, r) + " leaves the one-counter shape";
    }
  }
  return std::nullopt;
}

}  // namespace

const char* action_class_name(ActionClass c) {
  switch (c) {
    case ActionClass::Return: return "return";
    case ActionClass::Internal: return "internal";
    case ActionClass::Call: return "call";
  }
  return "?";
}

ControlId Ppda::add_control(const std::string& name) {
  return intern(control_names_, control_index_, name);
}

SymbolId Ppda::add_symbol(const std::string& name) {
  return intern(symbol_names_, symbol_index_, name);
}

ActionId Ppda::add_action(const std::string& name) {
  ActionId a = intern(action_names_, action_index_, name);
  if (action_classes_.size() < action_names_.size()) action_classes_.resize(action_names_.size());
  return a;
}

void Ppda::add_rule(Rule rule) {
  if (rule.head.control >= num_controls() || rule.head.symbol >= num_symbols()) {
    throw InvalidInput("rule head uses an unknown control state or symbol");
  }
  if (rule.action >= num_actions()) throw InvalidInput("rule uses an unknown action");
  if (rule.target.empty()) throw InvalidInput("rule has an empty distribution");
  for (const auto& [t, _] : rule.target.entries()) {
    if (t.control >= num_controls()) throw InvalidInput("rule target uses an unknown control state");
    if (t.push.size() > 2) throw InvalidInput("rule pushes more than two symbols");
    for (SymbolId x : t.push) {
      if (x >= num_symbols()) throw InvalidInput("rule target uses an unknown symbol");
    }
  }
  auto& bucket = by_head_[rule.head];
  for (std::size_t i : bucket) {
    if (rules_[i].action == rule.action && rules_[i].target == rule.target) return;
  }
  bucket.push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

void Ppda::set_action_class(ActionId a, ActionClass c) {
  if (a >= num_actions()) throw InvalidInput("unknown action");
  action_classes_.at(a) = c;
}

bool Ppda::has_action_partition() const {
  if (action_names_.empty()) return false;
  for (const auto& c : action_classes_) {
    if (!c) return false;
  }
  return true;
}

std::optional<ActionClass> Ppda::action_class(ActionId a) const { return action_classes_.at(a); }

std::optional<ControlId> Ppda::find_control(const std::string& name) const {
  return lookup(control_index_, name);
}
std::optional<SymbolId> Ppda::find_symbol(const std::string& name) const {
  return lookup(symbol_index_, name);
}
std::optional<ActionId> Ppda::find_action(const std::string& name) const {
  return lookup(action_index_, name);
}

const std::vector<std::size_t>& Ppda::rules_for(Head h) const {
  if (auto it = by_head_.find(h); it != by_head_.end()) return it->second;
  return kNoRules;
}

SubclassReport classify(const Ppda& m, bool require_partition) {
  SubclassReport rep;
  auto& diag = rep.diagnostics;

  rep.fully_probabilistic = true;
  rep.standard = true;
  std::set<std::pair<Head, ActionId>> seen;
  for (const auto& r : m.rules()) {
    if (!seen.emplace(r.head, r.action).second && rep.fully_probabilistic) {
      rep.fully_probabilistic = false;
      diag.push_back("not fully probabilistic: head " + config_name(m, {r.head.control, {r.head.symbol}}) +
                     " has several distributions for action " + m.action_name(r.action));
    }
    if (!r.target.is_dirac() && rep.standard) {
      rep.standard = false;
      diag.push_back("not standard: rule " + rule_string(m, r) + " is not Dirac");
    }
  }

  rep.bpa = m.num_controls() == 1;
  if (!rep.bpa) diag.push_back("not bpa: " + std::to_string(m.num_controls()) + " control states");

  if (m.num_symbols() != 2) {
    diag.push_back("not oca: stack alphabet has " + std::to_string(m.num_symbols()) + " symbols");
  } else {
    std::vector<std::pair<SymbolId, SymbolId>> roles;
    auto i = m.find_symbol("I");
    auto z = m.find_symbol("Z");
    if (i && z) roles.emplace_back(*i, *z);
    roles.emplace_back(0, 1);
    roles.emplace_back(1, 0);
    std::optional<std::string> first_violation;
    for (auto [ci, cz] : roles) {
      auto v = oca_violation(m, ci, cz);
      if (!v) {
        rep.oca = true;
        rep.counter_symbol = ci;
        rep.bottom_symbol = cz;
        break;
      }
      if (!first_violation) first_violation = v;
    }
    if (!rep.oca) diag.push_back("not oca: " + *first_violation);
  }

  if (!m.has_action_partition()) {
    if (require_partition) throw InvalidInput("visibly pushdown check needs an action partition");
    diag.push_back("not vpda: no complete return/internal/call partition declared");
  } else {
    rep.vpda = true;
    for (const auto& r : m.rules()) {
      ActionClass c = *m.action_class(r.action);
      std::size_t want = c == ActionClass::Return ? 0 : (c == ActionClass::Internal ? 1 : 2);
      for (const auto& [t, _] : r.target.entries()) {
        if (t.push.size() != want) {
          rep.vpda = false;
          diag.push_back(std::string("not vpda: ") + action_class_name(c) + " rule " +
                         rule_string(m, r) + " changes the stack height wrongly");
          break;
        }
      }
      if (!rep.vpda) break;
    }
  }
  return rep;
}

std::pair<SymbolId, SymbolId> oca_symbols(const Ppda& m) {
  auto rep = classify(m);
  if (!rep.oca) throw InvalidInput("machine is not a one-counter automaton");
  return {*rep.counter_symbol, *rep.bottom_symbol};
}

Config apply_target(const HeadTarget& t, const Config& c) {
  Config out{t.control, t.push};
  out.stack.insert(out.stack.end(), c.stack.begin() + 1, c.stack.end());
  return out;
}

std::vector<std::pair<ActionId, Distribution<Config>>> step(const Ppda& m, const Config& c) {
  std::vector<std::pair<ActionId, Distribution<Config>>> out;
  if (c.stack.empty()) return out;
  for (std::size_t i : m.rules_for({c.control, c.stack.front()})) {
    const Rule& r = m.rules()[i];
    out.emplace_back(r.action, r.target.map([&](const HeadTarget& t) { return apply_target(t, c); }));
  }
  return out;
}

namespace {

std::string join_names(const Ppda& m, ControlId q, const StackString& stack) {
  bool short_names = m.control_name(q).size() == 1;
  for (SymbolId x : stack) short_names = short_names && m.symbol_name(x).size() == 1;
  std::string out = m.control_name(q);
  for (SymbolId x : stack) {
    if (!short_names) out += '.';
    out += m.symbol_name(x);
  }
  return out;
}

}  // namespace

std::string config_name(const Ppda& m, const Config& c) { return join_names(m, c.control, c.stack); }

std::string target_name(const Ppda& m, const HeadTarget& t) { return join_names(m, t.control, t.push); }

std::string rule_string(const Ppda& m, const Rule& r) {
  std::string out = m.control_name(r.head.control) + " " + m.symbol_name(r.head.symbol) + " -" +
                    m.action_name(r.action) + "-> ";
  bool first = true;
  for (const auto& [t, w] : r.target.entries()) {
    if (!first) out += " + ";
    first = false;
    out += w.str() + " " + m.control_name(t.control);
    for (SymbolId x : t.push) out += " " + m.symbol_name(x);
  }
  return out;
}

Fragment reachable_fragment(const Ppda& m, const std::vector<Config>& roots,
                            std::optional<std::size_t> depth, std::size_t budget) {
  Fragment f;
  f.depth = depth;
  for (const auto& name : m.action_names()) f.plts.add_action(name);
  std::deque<StateId> queue;
  std::size_t symbols = 0;
  auto intern_config = [&](const Config& c, std::size_t level) {
    if (auto it = f.index.find(c); it != f.index.end()) return it->second;
    if (f.configs.size() >= budget) {
      throw BudgetExceeded("fragment exceeds budget of " + std::to_string(budget) + " states",
                           f.configs.size());
    }
    symbols += c.stack.size();
    if (symbols > kFragmentSymbolsPerState * budget) {
      throw BudgetExceeded("fragment stacks exceed " + std::to_string(kFragmentSymbolsPerState * budget) +
                               " stored symbols",
                           f.configs.size());
    }
    StateId id = f.plts.add_state(config_name(m, c));
    f.configs.push_back(c);
    f.level.push_back(level);
    f.index.emplace(c, id);
    queue.push_back(id);
    return id;
  };
  for (const auto& c : roots) f.roots.push_back(intern_config(c, 0));
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (depth && f.level[s] >= *depth) {
      f.frontier.push_back(s);
      continue;
    }
    Config c = f.configs[s];
    for (auto& [a, d] : step(m, c)) {
      std::vector<std::pair<StateId, Rational>> entries;
      for (const auto& [c2, w] : d.entries()) entries.emplace_back(intern_config(c2, f.level[s] + 1), w);
      f.plts.add_transition(s, a, Dist(std::move(entries)));
    }
  }
  return f;
}

}  // namespace pbisim
