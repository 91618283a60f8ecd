// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "pbisim/bpa.hpp"
#include "pbisim/cli.hpp"
#include "pbisim/error.hpp"
#include "pbisim/format.hpp"
#include "pbisim/gadgets.hpp"
#include "pbisim/game.hpp"
#include "pbisim/lift.hpp"
#include "pbisim/oca.hpp"
#include "pbisim/oracle.hpp"
#include "pbisim/refine.hpp"
#include "pbisim/vpda.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace pbisim;
namespace fs = std::filesystem;

namespace {

// Thrown by expect() with the failing detail.
struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

Config cfg(const Ppda& m, const std::string& text) { return format::expand(format::parse_config(m, text), 100000); }

std::string config_text(const Ppda& m, const Config& c) {
  std::string out = m.control_name(c.control);
  for (SymbolId x : c.stack) out += " " + m.symbol_name(x);
  return out;
}

// ---------------------------------------------------------------------------

std::string four_state_goldens() {
  Plts l = format::parse_plts(corpus::read("four_state.plts"));
  const StateId s = *l.find_state("s"), t1 = *l.find_state("t1"), t2 = *l.find_state("t2"), u = *l.find_state("u");
  Partition full = bisim_finite(l);
  expect(full.num_blocks() == 3, "expected three classes");
  expect(full.same_block(t1, t2), "t1 and t2 should be bisimilar");
  expect(!full.same_block(s, u) && !full.same_block(s, t1) && !full.same_block(u, t1), "s, u, t1 should be apart");
  expect(sim_n(l, 1).same_block(s, u), "s ~_1 u");
  expect(!sim_n(l, 2).same_block(s, u), "s !~_2 u");
  return "classes {s},{t1,t2},{u}";
}

std::string lift_master_property() {
  gen::Rng rng(1001);
  std::size_t pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    gen::PltsShape shape;
    shape.states = gen::uniform(rng, 1, 7);
    shape.actions = gen::uniform(rng, 1, 3);
    shape.max_support = 3;
    Plts l = gen::random_plts(rng, shape);
    LiftedPlts lp = lift_plts(l);
    auto base = sim_sequence(l, 4);
    auto lifted = sim_sequence(lp.plts, 12);
    for (std::size_t n = 0; n <= 4; ++n) {
      for (StateId s = 0; s < l.num_states(); ++s) {
        for (StateId t = 0; t < l.num_states(); ++t) {
          ++pairs;
          if (base[n].same_block(s, t) != lifted[3 * n].same_block(s, t)) {
            throw Failure{"trial " + std::to_string(trial) + ": states " + l.state_name(s) + "," + l.state_name(t) +
                          " at n=" + std::to_string(n)};
          }
        }
      }
    }
  }
  return "500 systems, " + std::to_string(pairs) + " pair/level checks";
}

std::string lifted_four_state_golden() {
  Plts l = format::parse_plts(corpus::read("four_state.plts"));
  LiftedPlts lp = lift_plts(l);
  expect(lp.plts.num_states() == 13, "13 states");
  expect(lp.plts.transitions().size() == 38, "38 transitions");
  std::set<std::string> actions(lp.plts.action_names().begin(), lp.plts.action_names().end());
  expect(actions == std::set<std::string>{"a", "b", "1/3", "1/2", "2/3", "1", "#"}, "action alphabet");
  expect(lp.plts.standard(), "lifted system is non-probabilistic");
  const StateId s = *lp.plts.find_state("s"), u = *lp.plts.find_state("u");
  expect(sim_n(lp.plts, 3).same_block(s, u), "s ~_3 u in the lift");
  expect(!sim_n(lp.plts, 4).same_block(s, u), "s !~_4 u in the lift");
  auto r3 = ref::lts_sim_n(lp.plts, 3), r4 = ref::lts_sim_n(lp.plts, 4);
  expect(r3[s][u] && !r4[s][u], "reference agrees on the lift");
  return "13 states, 38 transitions";
}

std::string stack_lift_rule_set() {
  Ppda m = format::parse_ppda(corpus::read("two_head.ppda"));
  LiftedPpda lp = lift_ppda_stack(m);
  std::set<std::string> got;
  for (const auto& r : lp.ppda.rules()) got.insert(rule_string(lp.ppda, r));
  const std::string d1 = "<2/3:pYX+1/3:q>", d2 = "<1/3:p+2/3:pX>", d3 = "<1:qY>", d4 = "<1:pXY>";
  std::set<std::string> want = {
      "p X -a-> 1 p " + d1, "q Y -a-> 1 p " + d2, "p Y -b-> 1 p " + d3, "q Y -a-> 1 p " + d4,
  };
  auto prob = [&](const std::string& d, const std::string& rho, const std::string& set) {
    want.insert("p " + d + " -" + rho + "-> 1 p " + set);
  };
  for (const char* rho : {"1", "2/3", "1/3"}) {
    prob(d1, rho, "{pYX,q}");
    prob(d2, rho, "{p,pX}");
    prob(d3, rho, "{qY}");
    prob(d4, rho, "{pXY}");
  }
  prob(d1, "1/3", "{q}");
  prob(d1, "2/3", "{pYX}");
  prob(d1, "1/3", "{pYX}");
  prob(d2, "1/3", "{p}");
  prob(d2, "2/3", "{pX}");
  prob(d2, "1/3", "{pX}");
  for (const char* r : {"p {pYX,q} -#-> 1 q", "p {pYX,q} -#-> 1 p Y X", "p {q} -#-> 1 q", "p {pYX} -#-> 1 p Y X",
                        "p {p,pX} -#-> 1 p", "p {p,pX} -#-> 1 p X", "p {p} -#-> 1 p", "p {pX} -#-> 1 p X",
                        "p {qY} -#-> 1 q Y", "p {pXY} -#-> 1 p X Y"}) {
    want.insert(r);
  }
  for (const auto& r : want) expect(got.count(r) == 1, "missing rule " + r);
  for (const auto& r : got) expect(want.count(r) == 1, "unexpected rule " + r);
  expect(lp.ppda.rules().size() == want.size(), "duplicate rules");
  return std::to_string(want.size()) + " rules, set-equal";
}

std::string counter_bpa_equivalence() {
  Ppda m = format::parse_ppda(corpus::read("counter_and_bpa.ppda"));
  for (std::size_t n = 0; n <= 6; ++n) {
    expect(oracle::bounded_equiv(m, cfg(m, "pXZ"), cfg(m, "rX"), n), "pXZ ~_n rX at n=" + std::to_string(n));
  }
  // declared classes: pX^kZ with r w (|w| = k over X, X'), qX^{k+1}Z with rYw
  std::vector<Config> roots;
  std::vector<std::pair<std::size_t, std::size_t>> same;  // indices into roots
  auto add = [&](const std::string& text) {
    roots.push_back(cfg(m, text));
    return roots.size() - 1;
  };
  for (std::size_t k = 1; k <= 2; ++k) {
    const std::size_t pk = add("p" + std::string(k, 'X') + "Z");
    const std::size_t qk = add("q" + std::string(k + 1, 'X') + "Z");
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::string w;
      for (std::size_t i = 0; i < k; ++i) w += (mask >> i & 1) ? "X'" : "X";
      same.emplace_back(pk, add("r" + w));
      same.emplace_back(qk, add("rY" + w));
    }
  }
  const std::size_t depth = 9, n = 6;
  Fragment f = reachable_fragment(m, roots, depth, 2000000);
  Partition p = sim_n(f.plts, n);
  for (auto [a, b] : same) {
    expect(p.same_block(f.roots[a], f.roots[b]),
           config_name(m, roots[a]) + " ~_" + std::to_string(n) + " " + config_name(m, roots[b]));
  }
  expect(!p.same_block(f.roots[0], f.roots[1]), "pXZ and qXXZ are in different classes");
  return "n <= 6 and " + std::to_string(same.size()) + " class memberships on a depth-" + std::to_string(depth) +
         " fragment";
}

std::string vpda_decisions() {
  Ppda m = format::parse_ppda(corpus::read("visibly_split.ppda"));
  vpda::ForceTable t(m);
  const std::size_t q = m.num_controls();
  const ControlId p = *m.find_control("p"), pp = *m.find_control("p'"), qc = *m.find_control("q"),
                  qq = *m.find_control("q'");
  vpda::HeadPair start{{p, 0}, {pp, 0}};
  vpda::PairSet target = t.empty_set();
  target[qc * q + qq] = true;
  expect(t.force_long(start, target), "(pX,p'X) forces {(q,q')}");
  expect(t.force_long(start, t.empty_set()), "(pX,p'X) forces the empty set");
  expect(!vpda::vpda_decide(m, cfg(m, "pX"), cfg(m, "p'X")), "pX !~ p'X");

  gen::Rng rng(1006);
  int checked = 0, equal = 0;
  for (int trial = 0; trial < 20000 && checked < 200; ++trial) {
    Ppda r = gen::random_vpda(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 2));
    Config a{static_cast<ControlId>(gen::uniform(rng, 0, r.num_controls() - 1)), gen::random_stack(rng, r.num_symbols(), 2)};
    Config b{static_cast<ControlId>(gen::uniform(rng, 0, r.num_controls() - 1)), gen::random_stack(rng, r.num_symbols(), 2)};
    bool expected;
    try {
      expected = oracle::full_equiv_finite(r, a, b, 2000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++checked;
    equal += expected;
    expect(vpda::vpda_decide(r, a, b) == expected,
           "disagreement on " + config_name(r, a) + " vs " + config_name(r, b) + "\n" + format::serialize(r));
  }
  expect(checked == 200, "only " + std::to_string(checked) + " finite instances generated");
  return "split example plus 200 instances (" + std::to_string(equal) + " bisimilar)";
}

std::string counter_machines() {
  gen::Rng rng(1007);
  int confirmed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Ppda m = gen::random_poca(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 2));
    const std::size_t k = m.num_controls();
    expect(oca::inc_set(m) == ref::inc_brute(m, k, k), "INC mismatch in trial " + std::to_string(trial));
    expect(oca::inc_set(m, {true}) == ref::inc_brute(m, 3 * k, k),
           "wide INC mismatch in trial " + std::to_string(trial));
    oca::OcaSystem sys(m);
    oracle::BoundedOracle o(sys);
    for (ControlId p1 = 0; p1 < k; ++p1) {
      for (ControlId p2 = 0; p2 < k; ++p2) {
        for (std::uint64_t c1 : {0, 1, 3}) {
          for (std::uint64_t c2 : {0, 2, 5}) {
            oca::CounterConfig a{p1, c1}, b{p2, c2};
            auto f = oca::not_bisim_filter(m, a, b, 8);
            if (f.verdict != oca::FilterVerdict::NotBisimilar) continue;
            expect(o.distinguishing_level(sys.node(a), sys.node(b), 30).has_value(),
                   "unconfirmed filter verdict " + oca::counter_name(m, a) + " vs " + oca::counter_name(m, b));
            ++confirmed;
          }
        }
      }
    }
    Plts u = oca::underlying(m);
    expect(k == 0 || sim_n(u, k - 1) == bisim_finite(u), "underlying system does not stabilise by k-1");
  }
  return "100 machines, " + std::to_string(confirmed) + " filter verdicts confirmed";
}

std::string bpa_norms_and_congruence() {
  Ppda m = ref::restrict(format::parse_ppda(corpus::read("counter_and_bpa.ppda")), {"r"}, {"X", "X'", "Y"});
  bpa::NormTable t = bpa::norms(m);
  const SymbolId X = *m.find_symbol("X"), Xp = *m.find_symbol("X'"), Y = *m.find_symbol("Y");
  expect(t.norm[X] == BigInt(1) && t.norm[Xp] == BigInt(1) && t.norm[Y] == BigInt(3), "norms X=1, X'=1, Y=3");
  // three lifted steps per macrostep
  LiftedPpda lp = lift_ppda_stack(m);
  auto lifted = ref::norms_bfs(lp.ppda, 12);
  for (const char* name : {"X", "X'", "Y"}) {
    const SymbolId a = *m.find_symbol(name), b = *lp.ppda.find_symbol(name);
    expect(lifted[b] && BigInt(static_cast<unsigned long>(*lifted[b])) == 3 * *t.norm[a],
           std::string("lifted norm of ") + name);
  }

  gen::Rng rng(1008);
  int run = 0, skipped = 0;
  while (run < 1000) {
    Ppda r = gen::random_bpa(rng, gen::uniform(rng, 1, 3), 2);
    const std::size_t g = r.num_symbols();
    auto rep = bpa::congruence_check(r, gen::random_stack(rng, g, 2), gen::random_stack(rng, g, 2),
                                     gen::random_stack(rng, g, 2), gen::random_stack(rng, g, 2), gen::uniform(rng, 0, 3));
    if (!rep.proviso_ok) {
      ++skipped;
      continue;
    }
    ++run;
    expect(rep.holds, "congruence fails on\n" + format::serialize(r));
  }
  return "norms 1,1,3 (lifted 3,3,9); 1000 congruence instances (" + std::to_string(skipped) +
         " draws rejected by the proviso)";
}

gadgets::OneLetterAfa afa_from(std::size_t n, std::size_t ops, std::size_t accepting,
                               const std::vector<std::pair<std::size_t, std::size_t>>& succ) {
  gadgets::OneLetterAfa a;
  for (std::size_t i = 0; i < n; ++i) {
    a.states.push_back("q" + std::to_string(i));
    a.delta.push_back({(ops >> i & 1) ? gadgets::AfaOp::And : gadgets::AfaOp::Or, succ[i].first, succ[i].second});
    a.accepting.push_back(accepting >> i & 1);
  }
  return a;
}

Config counter_cfg(const Ppda& m, const std::string& control, std::size_t n) {
  Config c{*m.find_control(control), StackString(n, *m.find_symbol("I"))};
  c.stack.push_back(*m.find_symbol("Z"));
  return c;
}

std::string afa_reduction() {
  gadgets::OneLetterAfa ex = format::parse_afa(corpus::read("three_state.afa"));
  gadgets::Reduction er = gadgets::afa_to_poca(ex);
  const Ppda& em = er.machine;
  auto eq = [&](const Ppda& m, const std::string& q, std::size_t n) {
    return oracle::full_equiv_finite(m, counter_cfg(m, q, n), counter_cfg(m, q + "_prime", n), 1000000);
  };
  expect(eq(em, "q1", 0), "q1Z ~ q1'Z");
  expect(!eq(em, "q2", 0), "q2Z !~ q2'Z");
  expect(!eq(em, "q1", 1), "q1IZ !~ q1'IZ");
  expect(eq(em, "q0", 1), "q0IZ ~ q0'IZ");

  // every operator and acceptance choice; successors exhaustive up to two
  // states and sampled for three
  std::size_t machines = 0;
  gen::Rng rng(1009);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> patterns;
    const std::size_t per_state = n * n;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= per_state;
    auto decode = [&](std::size_t code) {
      std::vector<std::pair<std::size_t, std::size_t>> s;
      for (std::size_t i = 0; i < n; ++i) {
        s.emplace_back(code % per_state / n, code % n);
        code /= per_state;
      }
      return s;
    };
    if (n <= 2) {
      for (std::size_t code = 0; code < total; ++code) patterns.push_back(decode(code));
    } else {
      for (int i = 0; i < 4; ++i) patterns.push_back(decode(gen::uniform(rng, 0, total - 1)));
    }
    for (const auto& succ : patterns) {
      for (std::size_t ops = 0; ops < (std::size_t{1} << n); ++ops) {
        for (std::size_t accepting = 0; accepting < (std::size_t{1} << n); ++accepting) {
          gadgets::OneLetterAfa a = afa_from(n, ops, accepting, succ);
          gadgets::Reduction r = gadgets::afa_to_poca(a);
          SubclassReport rep = classify(r.machine);
          expect(rep.oca && rep.fully_probabilistic && r.machine.num_actions() == 1, "reduction output class");
          auto table = gadgets::acc_table(a, 4);
          for (std::size_t len = 0; len <= 4; ++len) {
            for (std::size_t q = 0; q < n; ++q) {
              expect(table[len][q] == ref::acc_rec(a, q, len), "acceptance table");
              expect(eq(r.machine, a.states[q], len) == !table[len][q],
                     "equivalence differs from non-acceptance for " + a.states[q] + " n=" + std::to_string(len) +
                         "\n" + format::serialize(a));
            }
          }
          ++machines;
        }
      }
    }
  }
  return std::to_string(machines) + " automata, lengths 0..4, plus the three-state facts";
}

std::string game_reduction() {
  gen::Rng rng(1010);
  int wins0 = 0;
  for (int trial = 0; trial < 100; ++trial) {
    gadgets::ReachGame g = gen::random_game(rng, gen::uniform(rng, 1, 3), gen::uniform(rng, 1, 2));
    gadgets::Winner w = gadgets::solve_reach_game_finite(g, 100000);
    expect((w == gadgets::Winner::Player0) == ref::player0_wins(g, 64), "attractor disagrees with recursion");
    gadgets::Reduction r = gadgets::game_to_pvpda(g);
    SubclassReport rep = classify(r.machine, true);
    expect(rep.vpda && rep.fully_probabilistic, "reduction output class");
    std::map<ActionClass, int> per_class;
    for (ActionId a = 0; a < r.machine.num_actions(); ++a) per_class[*r.machine.action_class(a)]++;
    expect(per_class[ActionClass::Return] == 1 && per_class[ActionClass::Internal] == 1 &&
               per_class[ActionClass::Call] == 1,
           "one action per class");
    const bool eq = oracle::full_equiv_finite(r.machine, r.left, r.right, 1000000);
    expect(eq == (w == gadgets::Winner::Player0), "verdict differs from the winner\n" + format::serialize(g));
    wins0 += eq;
  }
  return "100 games (" + std::to_string(wins0) + " won by Player 0)";
}

bool strategy_wins(const Plts& l, const game::Strategy& st, const game::Position& pos, std::size_t rounds) {
  if (std::holds_alternative<game::PairPos>(pos) && rounds == 0) return false;
  auto moves = game::legal_moves(l, pos);
  if (moves.empty()) return game::terminal_outcome(pos) == game::Outcome::AttackerWins;
  if (game::owner(pos) == game::Player::Attacker) {
    auto it = st.moves.find({pos, rounds});
    if (it == st.moves.end()) return false;
    return strategy_wins(l, st, game::apply_move(l, pos, it->second), rounds);
  }
  for (const auto& m : moves) {
    const std::size_t next = std::holds_alternative<game::RespondPick>(m) ? rounds - 1 : rounds;
    if (!strategy_wins(l, st, game::apply_move(l, pos, m), next)) return false;
  }
  return true;
}

std::string game_solver_agreement() {
  std::vector<Plts> systems{format::parse_plts(corpus::read("four_state.plts"))};
  gen::Rng rng(1011);
  for (int i = 0; i < 60; ++i) {
    gen::PltsShape shape;
    shape.states = gen::uniform(rng, 1, 5);
    shape.max_support = 2;
    systems.push_back(gen::random_plts(rng, shape));
  }
  std::size_t strategies = 0;
  for (const Plts& l : systems) {
    auto seq = sim_sequence(l, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (StateId s = 0; s < l.num_states(); ++s) {
        for (StateId t = 0; t < l.num_states(); ++t) {
          game::WinResult w = game::attacker_wins_within(l, s, t, n);
          expect(w.attacker_wins == !seq[n].same_block(s, t), "solver differs from the approximant");
          if (w.attacker_wins) {
            expect(strategy_wins(l, w.strategy, game::PairPos{s, t}, n), "returned strategy loses");
            ++strategies;
          }
        }
      }
    }
  }
  return std::to_string(systems.size()) + " systems, " + std::to_string(strategies) + " strategies replayed";
}

int cli_call(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::istringstream in;
  std::ostringstream o, e;
  int code = cli::run(args, in, o, e);
  if (out) *out = o.str();
  return code;
}

std::string cli_behaviour() {
  // serialize/parse identity on every corpus file
  for (const auto& entry : fs::directory_iterator(PBISIM_CORPUS_DIR)) {
    const std::string text = corpus::read(entry.path().filename().string());
    std::string once;
    switch (format::detect_kind(text)) {
      case format::FileKind::Plts: once = format::serialize(format::parse_plts(text)); break;
      case format::FileKind::Ppda: once = format::serialize(format::parse_ppda(text)); break;
      case format::FileKind::Afa: once = format::serialize(format::parse_afa(text)); break;
      case format::FileKind::Game: once = format::serialize(format::parse_game(text)); break;
    }
    std::string twice;
    switch (format::detect_kind(once)) {
      case format::FileKind::Plts: twice = format::serialize(format::parse_plts(once)); break;
      case format::FileKind::Ppda: twice = format::serialize(format::parse_ppda(once)); break;
      case format::FileKind::Afa: twice = format::serialize(format::parse_afa(once)); break;
      case format::FileKind::Game: twice = format::serialize(format::parse_game(once)); break;
    }
    expect(once == twice, "round trip changes " + entry.path().filename().string());
    expect(cli_call({"validate", entry.path().string()}) == cli::kSuccess, "validate " + entry.path().string());
  }

  fs::path dir = fs::temp_directory_path() / "pbisim_acceptance";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  };

  // documented exit codes
  const std::string four = corpus::path("four_state.plts");
  expect(cli_call({"check", four, "t1", "t2"}) == cli::kSuccess, "exit 0 for bisimilar");
  expect(cli_call({"check", four, "s", "u"}) == cli::kNotBisimilar, "exit 1 for not bisimilar");
  expect(cli_call({"check", four, "s", "u", "--method", "bounded", "--n", "1"}) == cli::kUnknown, "exit 2 for unknown");
  expect(cli_call({"check", write("bad.plts", "plts\nstates: s\nactions: a\ns -a-> 1/2 s\n"), "s", "s"}) ==
             cli::kInputError,
         "exit 3 for malformed input");
  expect(cli_call({"check", corpus::path("counter_and_bpa.ppda"), "pX^100000000000Z", "qX^100000000000Z", "--method",
                   "bounded", "--n", "2"}) == cli::kResourceGuard,
         "exit 4 for a size guard");

  // auto agrees with each specific method whenever that method decides
  std::size_t compared = 0;
  auto agree = [&](const std::string& file, const std::string& a, const std::string& b, const std::string& method) {
    const int specific = cli_call({"check", file, a, b, "--method", method});
    const int automatic = cli_call({"check", file, a, b});
    expect(specific <= cli::kUnknown && automatic <= cli::kUnknown, "check failed on " + a + " vs " + b);
    if (specific == cli::kUnknown) return;
    ++compared;
    expect(automatic == specific, file + ": auto gives " + std::to_string(automatic) + ", " + method + " gives " +
                                      std::to_string(specific) + " for " + a + " vs " + b);
  };
  for (const char* a : {"s", "t1", "t2", "u"}) {
    for (const char* b : {"s", "t1", "t2", "u"}) agree(four, a, b, "finite");
  }
  const std::string split = corpus::path("visibly_split.ppda");
  for (const char* a : {"pX", "p'X", "qX", "q'XX"}) {
    for (const char* b : {"pX", "p'X", "q'X", "qXX"}) agree(split, a, b, "vpda");
  }
  gen::Rng rng(1012);
  for (int i = 0; i < 20; ++i) {
    Ppda m = gen::random_vpda(rng, gen::uniform(rng, 1, 3), gen::uniform(rng, 1, 2));
    const std::string file = write("vpda" + std::to_string(i) + ".ppda", format::serialize(m));
    Config a{static_cast<ControlId>(gen::uniform(rng, 0, m.num_controls() - 1)), gen::random_stack(rng, m.num_symbols(), 2)};
    Config b{static_cast<ControlId>(gen::uniform(rng, 0, m.num_controls() - 1)), gen::random_stack(rng, m.num_symbols(), 2)};
    agree(file, config_text(m, a), config_text(m, b), "vpda");
  }
  for (int i = 0; i < 10; ++i) {
    Ppda m = gen::random_poca(rng, gen::uniform(rng, 1, 3), 2);
    const std::string file = write("oca" + std::to_string(i) + ".ppda", format::serialize(m));
    for (int j = 0; j < 3; ++j) {
      Config a = oca::to_config(m, {static_cast<ControlId>(gen::uniform(rng, 0, m.num_controls() - 1)), gen::uniform(rng, 0, 4)});
      Config b = oca::to_config(m, {static_cast<ControlId>(gen::uniform(rng, 0, m.num_controls() - 1)), gen::uniform(rng, 0, 4)});
      agree(file, config_text(m, a), config_text(m, b), "oca-filter");
    }
  }
  return "corpus round trips, exit codes 0-4, " + std::to_string(compared) + " auto/method comparisons";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"four-state goldens", four_state_goldens},
      {"lift preserves approximants (random systems)", lift_master_property},
      {"lifted four-state golden", lifted_four_state_golden},
      {"stack-version lift rule set", stack_lift_rule_set},
      {"counter and BPA configurations", counter_bpa_equivalence},
      {"visibly pushdown decision", vpda_decisions},
      {"one-counter INC, filter and stabilisation", counter_machines},
      {"BPA norms and congruence", bpa_norms_and_congruence},
      {"automaton reduction", afa_reduction},
      {"reachability game reduction", game_reduction},
      {"game solver agreement", game_solver_agreement},
      {"command line", cli_behaviour},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      detail = run();
      ok = true;
    } catch (const Failure& f) {
      detail = f.what;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << time.str() << "s): " << detail << std::endl;
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
