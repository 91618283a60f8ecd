#include "pbisim/gadgets.hpp"

#include <map>

#include "pbisim/error.hpp"

namespace pbisim::gadgets {

namespace {

const Rational kHalf(1, 2);

template <class T>
Distribution<T> halves(T x, T y) {
  return Distribution<T>({{std::move(x), kHalf}, {std::move(y), kHalf}});
}

HeadTarget ht(ControlId c, StackString push = {}) { return {c, std::move(push)}; }

ControlId fresh_control(Ppda& m, const std::string& name) {
  if (m.find_control(name)) throw InvalidInput("generated control state name clashes: " + name);
  return m.add_control(name);
}

}  // namespace

void OneLetterAfa::validate() const {
  if (states.empty()) throw InvalidInput("automaton has no states");
  if (delta.size() != states.size() || accepting.size() != states.size()) {
    throw InvalidInput("transition function must be total");
  }
  if (initial >= states.size()) throw InvalidInput("initial state out of range");
  for (const auto& t : delta) {
    if (t.q1 >= states.size() || t.q2 >= states.size()) throw InvalidInput("transition target out of range");
  }
}

std::vector<std::vector<bool>> acc_table(const OneLetterAfa& afa, std::size_t max_n) {
  afa.validate();
  std::vector<std::vector<bool>> t{afa.accepting};
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto& prev = t.back();
    std::vector<bool> row(afa.states.size());
    for (std::size_t q = 0; q < row.size(); ++q) {
      const auto& d = afa.delta[q];
      row[q] = d.op == AfaOp::And ? prev[d.q1] && prev[d.q2] : prev[d.q1] || prev[d.q2];
    }
    t.push_back(std::move(row));
  }
  return t;
}

bool acc(const OneLetterAfa& afa, std::size_t q, std::size_t n) { return acc_table(afa, n)[n].at(q); }

void and_gadget(Plts& l, StateId s, StateId s2, StateId t1, StateId t1p, StateId t2, StateId t2p, ActionId a) {
  l.add_transition(s, a, halves(t1, t2));
  l.add_transition(s2, a, halves(t1p, t2p));
}

OrGadget or_gadget(Plts& l, StateId s, StateId s2, StateId t1, StateId t1p, StateId t2, StateId t2p,
                   ActionId a, const std::string& prefix) {
  OrGadget g{l.add_state(prefix + "u12"), l.add_state(prefix + "u1'2'"), l.add_state(prefix + "u12'"),
             l.add_state(prefix + "u1'2")};
  l.add_transition(s, a, halves(g.u12, g.u1p2p));
  l.add_transition(s2, a, halves(g.u12p, g.u1p2));
  l.add_transition(g.u12, a, halves(t1, t2));
  l.add_transition(g.u1p2p, a, halves(t1p, t2p));
  l.add_transition(g.u12p, a, halves(t1, t2p));
  l.add_transition(g.u1p2, a, halves(t1p, t2));
  return g;
}

Reduction afa_to_poca(const OneLetterAfa& afa) {
  afa.validate();
  Reduction out;
  Ppda& m = out.machine;
  const SymbolId I = m.add_symbol("I");
  const SymbolId Z = m.add_symbol("Z");
  const ActionId a = m.add_action("a");
  const std::size_t n = afa.states.size();
  std::vector<ControlId> q(n), qp(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = fresh_control(m, afa.states[i]);
  for (std::size_t i = 0; i < n; ++i) qp[i] = fresh_control(m, afa.states[i] + "_prime");
  const ControlId p0 = fresh_control(m, "p0");
  const ControlId p0p = fresh_control(m, "p0_prime");
  const ControlId r = fresh_control(m, "r");
  auto rule = [&](ControlId c, SymbolId x, Distribution<HeadTarget> d) { m.add_rule({{c, x}, a, std::move(d)}); };

  for (std::size_t i = 0; i < n; ++i) {
    if (afa.accepting[i]) rule(q[i], Z, Distribution<HeadTarget>::dirac(ht(r, {Z})));
  }
  std::optional<ControlId> s1, s2;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = afa.delta[i];
    const std::string& name = afa.states[i];
    if (d.op == AfaOp::Or) {
      // AND gadget: both successors must stay equivalent
      if (!s1) {
        s1 = fresh_control(m, "s1");
        s2 = fresh_control(m, "s2");
        rule(*s1, I, halves(ht(*s1, {I}), ht(r)));
        rule(*s2, I, Distribution<HeadTarget>({{ht(*s2, {I}), Rational(2, 5)}, {ht(r), Rational(3, 5)}}));
      }
      ControlId r1 = fresh_control(m, name + "_r1"), r2 = fresh_control(m, name + "_r2");
      ControlId r1p = fresh_control(m, name + "_r1_prime"), r2p = fresh_control(m, name + "_r2_prime");
      rule(q[i], I, halves(ht(r1, {I}), ht(r2, {I})));
      rule(qp[i], I, halves(ht(r1p, {I}), ht(r2p, {I})));
      rule(r1, I, halves(ht(q[d.q1]), ht(*s1, {I})));
      rule(r2, I, halves(ht(q[d.q2]), ht(*s2, {I})));
      rule(r1p, I, halves(ht(qp[d.q1]), ht(*s1, {I})));
      rule(r2p, I, halves(ht(qp[d.q2]), ht(*s2, {I})));
    } else {
      ControlId u12 = fresh_control(m, name + "_u12"), u1p2p = fresh_control(m, name + "_u1p2p");
      ControlId u12p = fresh_control(m, name + "_u12p"), u1p2 = fresh_control(m, name + "_u1p2");
      rule(q[i], I, halves(ht(u12, {I}), ht(u1p2p, {I})));
      rule(qp[i], I, halves(ht(u12p, {I}), ht(u1p2, {I})));
      rule(u12, I, halves(ht(q[d.q1]), ht(q[d.q2])));
      rule(u1p2p, I, halves(ht(qp[d.q1]), ht(qp[d.q2])));
      rule(u12p, I, halves(ht(q[d.q1]), ht(qp[d.q2])));
      rule(u1p2, I, halves(ht(qp[d.q1]), ht(q[d.q2])));
    }
  }
  const Rational third(1, 3);
  rule(p0, I, Distribution<HeadTarget>({{ht(p0, {I, I}), third}, {ht(q[afa.initial]), third}, {ht(r, {I}), third}}));
  rule(p0p, I,
       Distribution<HeadTarget>({{ht(p0p, {I, I}), third}, {ht(qp[afa.initial]), third}, {ht(r, {I}), third}}));
  out.left = {p0, {I, Z}};
  out.right = {p0p, {I, Z}};
  return out;
}

void ReachGame::validate() const {
  if (machine.num_actions() > 1) throw InvalidInput("reachability game must have a single action");
  if (player1.size() != machine.num_controls()) throw InvalidInput("player assignment must cover every control state");
  if (initial.control >= machine.num_controls() || initial.symbol >= machine.num_symbols()) {
    throw InvalidInput("initial configuration out of range");
  }
  std::map<Head, std::vector<const Rule*>> by_head;
  for (const auto& r : machine.rules()) {
    if (!r.target.is_dirac()) throw InvalidInput("reachability game rules must be non-probabilistic");
    by_head[r.head].push_back(&r);
  }
  for (const auto& [h, rs] : by_head) {
    if (rs.size() > 2) {
      throw InvalidInput("head " + machine.control_name(h.control) + machine.symbol_name(h.symbol) +
                         " has more than two rules");
    }
    if (rs.size() == 2) {
      for (const Rule* r : rs) {
        if (r->target.entries()[0].first.push.size() != 1) {
          throw InvalidInput("a head with two rules must rewrite to single symbols: " + rule_string(machine, *r));
        }
      }
    }
  }
}

const char* winner_name(Winner w) { return w == Winner::Player0 ? "player0" : "player1"; }

Reduction game_to_pvpda(const ReachGame& g) {
  g.validate();
  const Ppda& src = g.machine;
  Reduction out;
  Ppda& m = out.machine;
  const std::size_t nq = src.num_controls();
  std::vector<ControlId> q(nq), qp(nq);
  for (ControlId i = 0; i < nq; ++i) q[i] = fresh_control(m, src.control_name(i));
  for (ControlId i = 0; i < nq; ++i) qp[i] = fresh_control(m, src.control_name(i) + "_prime");
  const ControlId z = fresh_control(m, "z");
  for (const auto& name : src.symbol_names()) m.add_symbol(name);
  const ActionId ar = m.add_action("ar"), ai = m.add_action("ai"), ac = m.add_action("ac");
  m.set_action_class(ar, ActionClass::Return);
  m.set_action_class(ai, ActionClass::Internal);
  m.set_action_class(ac, ActionClass::Call);
  const ActionId by_len[3] = {ar, ai, ac};

  // intermediate controls are keyed by name so equal roles share one state
  auto inter = [&](const std::string& name) {
    if (auto c = m.find_control(name)) return *c;
    return m.add_control(name);
  };
  auto cname = [&](ControlId c, bool primed) { return src.control_name(c) + (primed ? "_prime" : ""); };
  auto tag = [&](const HeadTarget& t, bool primed) { return cname(t.control, primed) + "_" + src.symbol_name(t.push[0]); };
  auto copy = [&](const HeadTarget& t, bool primed) { return ht(primed ? qp[t.control] : q[t.control], t.push); };

  for (ControlId p = 0; p < nq; ++p) {
    for (SymbolId x = 0; x < src.num_symbols(); ++x) {
      const auto& idx = src.rules_for({p, x});
      if (idx.empty()) {
        m.add_rule({{q[p], x}, ai, Distribution<HeadTarget>::dirac(ht(q[p], {x}))});
        m.add_rule({{qp[p], x}, ai, Distribution<HeadTarget>::dirac(ht(z, {x}))});
      } else if (idx.size() == 1) {
        const HeadTarget& t = src.rules()[idx[0]].target.entries()[0].first;
        const ActionId a = by_len[t.push.size()];
        m.add_rule({{q[p], x}, a, Distribution<HeadTarget>::dirac(copy(t, false))});
        m.add_rule({{qp[p], x}, a, Distribution<HeadTarget>::dirac(copy(t, true))});
      } else {
        const HeadTarget& t1 = src.rules()[idx[0]].target.entries()[0].first;
        const HeadTarget& t2 = src.rules()[idx[1]].target.entries()[0].first;
        if (!g.player1[p]) {
          auto u = [&](bool p1, bool p2) {
            ControlId c = inter("or_" + tag(t1, p1) + "_" + tag(t2, p2));
            m.add_rule({{c, x}, ai, halves(copy(t1, p1), copy(t2, p2))});
            return c;
          };
          m.add_rule({{q[p], x}, ai, halves(ht(u(false, false), {x}), ht(u(true, true), {x}))});
          m.add_rule({{qp[p], x}, ai, halves(ht(u(false, true), {x}), ht(u(true, false), {x}))});
        } else {
          for (bool primed : {false, true}) {
            ControlId c1 = inter("and1_" + tag(t1, primed));
            ControlId c2 = inter("and2_" + tag(t2, primed));
            m.add_rule({{c1, x}, ai, Distribution<HeadTarget>::dirac(copy(t1, primed))});
            m.add_rule({{c2, x}, ai, halves(copy(t2, primed), ht(z, {x}))});
            m.add_rule({{primed ? qp[p] : q[p], x}, ai, halves(ht(c1, {x}), ht(c2, {x}))});
          }
        }
      }
    }
  }
  out.left = {q[g.initial.control], {g.initial.symbol}};
  out.right = {qp[g.initial.control], {g.initial.symbol}};
  return out;
}

Winner solve_reach_game_finite(const ReachGame& g, std::size_t budget) {
  g.validate();
  Fragment f = reachable_fragment(g.machine, {Config{g.initial.control, {g.initial.symbol}}}, std::nullopt, budget);
  const std::size_t n = f.plts.num_states();
  std::vector<std::vector<StateId>> succ(n), pred(n);
  for (const auto& t : f.plts.transitions()) {
    for (const auto& [s, _] : t.target.entries()) {
      succ[t.source].push_back(s);
      pred[s].push_back(t.source);
    }
  }
  std::vector<char> attr(n, 0);
  std::vector<std::size_t> pending(n);
  std::vector<StateId> work;
  for (StateId s = 0; s < n; ++s) {
    if (f.configs[s].stack.empty()) throw InvalidInput("an empty-stack configuration is reachable");
    pending[s] = succ[s].size();
    if (succ[s].empty()) {
      attr[s] = 1;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (StateId p : pred[s]) {
      if (attr[p]) continue;
      const bool mover1 = g.player1[f.configs[p].control];
      if (mover1 || --pending[p] == 0) {
        attr[p] = 1;
        work.push_back(p);
      }
    }
  }
  return attr[f.roots[0]] ? Winner::Player1 : Winner::Player0;
}

}  // namespace pbisim::gadgets
