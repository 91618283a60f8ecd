#include "pbisim/lift.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pbisim {

namespace {

std::size_t saturating_pow2(std::size_t k) {
  return k >= 60 ? (std::size_t{1} << 60) : (std::size_t{1} << k);
}

template <class T>
void collect_numbers(const Distribution<T>& d, std::set<Rational>& out) {
  for (const auto& sub : nonempty_subsets(d.support())) out.insert(d.mass_of(sub));
}

void check_action_names(const std::vector<std::string>& names, const std::vector<Rational>& w) {
  for (const auto& name : names) {
    bool clash = name == "#";
    for (const auto& rho : w) clash = clash || name == rho.str();
    if (clash) throw InvalidInput("action name '" + name + "' clashes with a lifted action");
  }
}

}  // namespace

std::vector<Rational> relevant_numbers(const std::vector<Dist>& dists) {
  std::set<Rational> w;
  for (const auto& d : dists) collect_numbers(d, w);
  return {w.begin(), w.end()};
}

std::vector<Rational> relevant_numbers(const std::vector<Distribution<HeadTarget>>& dists) {
  std::set<Rational> w;
  for (const auto& d : dists) collect_numbers(d, w);
  return {w.begin(), w.end()};
}

std::size_t lift_size_estimate(const Plts& plts) {
  std::size_t total = 0;
  for (const auto& t : plts.transitions()) total += saturating_pow2(t.target.size());
  return total;
}

std::string dist_state_name(const Plts& plts, const Dist& d) {
  std::string out = "<";
  bool first = true;
  for (const auto& [s, w] : d.entries()) {
    if (!first) out += '+';
    first = false;
    out += w.str() + ":" + plts.state_name(s);
  }
  return out + ">";
}

std::string subset_state_name(const Plts& plts, const std::vector<StateId>& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += plts.state_name(t[i]);
  }
  return out + "}";
}

LiftedPlts lift_plts(const Plts& plts, std::size_t cap) {
  std::size_t estimate = lift_size_estimate(plts);
  if (estimate > cap) {
    throw SizeGuard("lifted system would need about " + std::to_string(estimate) +
                    " subset states (cap " + std::to_string(cap) + ")");
  }
  LiftedPlts out;
  for (StateId s = 0; s < plts.num_states(); ++s) {
    out.plts.add_state(plts.state_name(s));
    out.state_origin.push_back({LiftStateOrigin::Kind::Original, s, {}, {}});
  }

  std::vector<Dist> dists;
  std::map<Dist, StateId> dist_state;
  for (const auto& t : plts.transitions()) {
    if (dist_state.count(t.target)) continue;
    dist_state.emplace(t.target, static_cast<StateId>(plts.num_states() + dists.size()));
    dists.push_back(t.target);
  }
  for (const auto& d : dists) {
    out.plts.add_state(dist_state_name(plts, d));
    out.state_origin.push_back({LiftStateOrigin::Kind::Dist, 0, d, {}});
  }

  std::map<std::vector<StateId>, StateId> subset_state;
  for (const auto& d : dists) {
    for (auto& sub : nonempty_subsets(d.support())) {
      if (subset_state.count(sub)) continue;
      StateId id = out.plts.add_state(subset_state_name(plts, sub));
      subset_state.emplace(sub, id);
      out.state_origin.push_back({LiftStateOrigin::Kind::Subset, 0, {}, std::move(sub)});
    }
  }

  std::vector<Rational> w = relevant_numbers(dists);
  check_action_names(plts.action_names(), w);
  for (ActionId a = 0; a < plts.num_actions(); ++a) {
    out.plts.add_action(plts.action_name(a));
    out.action_origin.push_back({LiftActionOrigin::Kind::Original, a, {}});
  }
  std::vector<ActionId> rho_action;
  for (const auto& rho : w) {
    rho_action.push_back(out.plts.add_action(rho.str()));
    out.action_origin.push_back({LiftActionOrigin::Kind::Prob, 0, rho});
  }
  ActionId hash = out.plts.add_action("#");
  out.action_origin.push_back({LiftActionOrigin::Kind::Hash, 0, {}});

  for (const auto& t : plts.transitions()) {
    out.plts.add_transition(t.source, t.action, Dist::dirac(dist_state.at(t.target)));
  }
  for (const auto& d : dists) {
    StateId ds = dist_state.at(d);
    for (const auto& sub : nonempty_subsets(d.support())) {
      Rational mass = d.mass_of(sub);
      for (std::size_t i = 0; i < w.size() && w[i] <= mass; ++i) {
        out.plts.add_transition(ds, rho_action[i], Dist::dirac(subset_state.at(sub)));
      }
    }
  }
  for (const auto& [sub, id] : subset_state) {
    for (StateId s : sub) out.plts.add_transition(id, hash, Dist::dirac(s));
  }
  return out;
}

namespace {

std::string fresh_dist_name(const Ppda& m, const Distribution<HeadTarget>& d) {
  std::string out = "<";
  bool first = true;
  for (const auto& [t, w] : d.entries()) {
    if (!first) out += '+';
    first = false;
    out += w.str() + ":" + target_name(m, t);
  }
  return out + ">";
}

std::string fresh_subset_name(const Ppda& m, const std::vector<HeadTarget>& sub) {
  std::string out = "{";
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (i) out += ',';
    out += target_name(m, sub[i]);
  }
  return out + "}";
}

struct PpdaIngredients {
  std::vector<Distribution<HeadTarget>> dists;  // first appearance order
  std::vector<std::vector<HeadTarget>> subsets;  // first appearance order, deduplicated
  std::vector<Rational> w;
};

PpdaIngredients ingredients(const Ppda& m, std::size_t cap) {
  PpdaIngredients out;
  std::set<Distribution<HeadTarget>> seen;
  std::size_t estimate = 0;
  for (const auto& r : m.rules()) {
    estimate += saturating_pow2(r.target.size());
    if (seen.insert(r.target).second) out.dists.push_back(r.target);
  }
  if (estimate > cap) {
    throw SizeGuard("lifted machine would need about " + std::to_string(estimate) +
                    " subset symbols (cap " + std::to_string(cap) + ")");
  }
  std::set<std::vector<HeadTarget>> seen_sub;
  for (const auto& d : out.dists) {
    for (auto& sub : nonempty_subsets(d.support())) {
      if (seen_sub.insert(sub).second) out.subsets.push_back(std::move(sub));
    }
  }
  out.w = relevant_numbers(out.dists);
  return out;
}

void copy_signature(const Ppda& m, const std::vector<Rational>& w, LiftedPpda& out,
                    std::vector<ActionId>& rho_action, ActionId& hash) {
  check_action_names(m.action_names(), w);
  for (ActionId a = 0; a < m.num_actions(); ++a) {
    out.ppda.add_action(m.action_name(a));
    out.action_origin.push_back({LiftActionOrigin::Kind::Original, a, {}});
  }
  for (const auto& rho : w) {
    rho_action.push_back(out.ppda.add_action(rho.str()));
    out.action_origin.push_back({LiftActionOrigin::Kind::Prob, 0, rho});
  }
  hash = out.ppda.add_action("#");
  out.action_origin.push_back({LiftActionOrigin::Kind::Hash, 0, {}});
}

}  // namespace

LiftedPpda lift_ppda_stack(const Ppda& m, std::size_t cap) {
  if (m.num_controls() == 0) throw InvalidInput("machine has no control states");
  PpdaIngredients ing = ingredients(m, cap);
  LiftedPpda out;
  for (const auto& q : m.control_names()) out.ppda.add_control(q);
  for (const auto& x : m.symbol_names()) out.ppda.add_symbol(x);
  std::map<Distribution<HeadTarget>, SymbolId> dist_sym;
  std::map<std::vector<HeadTarget>, SymbolId> subset_sym;
  auto fresh_symbol = [&](const std::string& name) {
    if (out.ppda.find_symbol(name)) throw InvalidInput("symbol name '" + name + "' clashes with a fresh symbol");
    return out.ppda.add_symbol(name);
  };
  for (const auto& d : ing.dists) {
    SymbolId x = fresh_symbol(fresh_dist_name(m, d));
    dist_sym.emplace(d, x);
    out.fresh.emplace(x, LiftedPpda::Fresh{true, d, {}});
  }
  for (const auto& sub : ing.subsets) {
    SymbolId x = fresh_symbol(fresh_subset_name(m, sub));
    subset_sym.emplace(sub, x);
    out.fresh.emplace(x, LiftedPpda::Fresh{false, {}, sub});
  }
  std::vector<ActionId> rho_action;
  ActionId hash = 0;
  copy_signature(m, ing.w, out, rho_action, hash);

  const ControlId q0 = 0;
  for (const auto& r : m.rules()) {
    out.ppda.add_rule({r.head, r.action,
                       Distribution<HeadTarget>::dirac({q0, {dist_sym.at(r.target)}})});
  }
  for (const auto& d : ing.dists) {
    for (const auto& sub : nonempty_subsets(d.support())) {
      Rational mass = d.mass_of(sub);
      for (std::size_t i = 0; i < ing.w.size() && ing.w[i] <= mass; ++i) {
        out.ppda.add_rule({{q0, dist_sym.at(d)}, rho_action[i],
                           Distribution<HeadTarget>::dirac({q0, {subset_sym.at(sub)}})});
      }
    }
  }
  for (const auto& sub : ing.subsets) {
    for (const auto& t : sub) {
      out.ppda.add_rule({{q0, subset_sym.at(sub)}, hash, Distribution<HeadTarget>::dirac(t)});
    }
  }
  return out;
}

LiftedPpda lift_ppda_state(const Ppda& m, std::size_t cap) {
  PpdaIngredients ing = ingredients(m, cap);
  LiftedPpda out;
  out.control_version = true;
  for (const auto& q : m.control_names()) out.ppda.add_control(q);
  for (const auto& x : m.symbol_names()) out.ppda.add_symbol(x);
  std::map<Distribution<HeadTarget>, ControlId> dist_ctl;
  std::map<std::vector<HeadTarget>, ControlId> subset_ctl;
  auto fresh_control = [&](const std::string& name) {
    if (out.ppda.find_control(name)) throw InvalidInput("control name '" + name + "' clashes with a fresh state");
    return out.ppda.add_control(name);
  };
  for (const auto& d : ing.dists) {
    ControlId q = fresh_control(fresh_dist_name(m, d));
    dist_ctl.emplace(d, q);
    out.fresh.emplace(q, LiftedPpda::Fresh{true, d, {}});
  }
  for (const auto& sub : ing.subsets) {
    ControlId q = fresh_control(fresh_subset_name(m, sub));
    subset_ctl.emplace(sub, q);
    out.fresh.emplace(q, LiftedPpda::Fresh{false, {}, sub});
  }
  std::vector<ActionId> rho_action;
  ActionId hash = 0;
  copy_signature(m, ing.w, out, rho_action, hash);

  // The symbol under <d> and <T> is never inspected; rules are emitted for
  // the symbols that can actually sit there, i.e. heads of rules carrying d.
  std::map<Distribution<HeadTarget>, std::set<SymbolId>> under;
  for (const auto& r : m.rules()) {
    out.ppda.add_rule({r.head, r.action,
                       Distribution<HeadTarget>::dirac({dist_ctl.at(r.target), {r.head.symbol}})});
    under[r.target].insert(r.head.symbol);
  }
  std::map<std::vector<HeadTarget>, std::set<SymbolId>> under_subset;
  for (const auto& d : ing.dists) {
    for (SymbolId y : under.at(d)) {
      for (const auto& sub : nonempty_subsets(d.support())) {
        under_subset[sub].insert(y);
        Rational mass = d.mass_of(sub);
        for (std::size_t i = 0; i < ing.w.size() && ing.w[i] <= mass; ++i) {
          out.ppda.add_rule({{dist_ctl.at(d), y}, rho_action[i],
                             Distribution<HeadTarget>::dirac({subset_ctl.at(sub), {y}})});
        }
      }
    }
  }
  for (const auto& sub : ing.subsets) {
    for (SymbolId y : under_subset.at(sub)) {
      for (const auto& t : sub) {
        out.ppda.add_rule({{subset_ctl.at(sub), y}, hash, Distribution<HeadTarget>::dirac(t)});
      }
    }
  }
  return out;
}

}  // namespace pbisim
