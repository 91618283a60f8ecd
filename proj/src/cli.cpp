#include "pbisim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbisim/bpa.hpp"
#include "pbisim/error.hpp"
#include "pbisim/format.hpp"
#include "pbisim/gadgets.hpp"
#include "pbisim/game.hpp"
#include "pbisim/lift.hpp"
#include "pbisim/oca.hpp"
#include "pbisim/oracle.hpp"
#include "pbisim/refine.hpp"
#include "pbisim/service.hpp"
#include "pbisim/session.hpp"
#include "pbisim/vpda.hpp"

namespace pbisim::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxStackHeight = 100000;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot read file '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string block_string(const Plts& l, const std::vector<StateId>& block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + l.state_name(block[i]);
  return out + "}";
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, std::ostream& out) {
  std::string text = read_file(path);
  switch (format::detect_kind(text)) {
    case format::FileKind::Plts: {
      Plts l = format::parse_plts(text);
      out << "kind: plts\nstates: " << l.num_states() << "\nactions: " << l.num_actions()
          << "\ntransitions: " << l.transitions().size() << "\nfully_probabilistic: " << yes_no(l.fully_probabilistic())
          << "\nstandard: " << yes_no(l.standard()) << "\n";
      break;
    }
    case format::FileKind::Ppda: {
      Ppda m = format::parse_ppda(text);
      SubclassReport r = classify(m);
      out << "kind: ppda\ncontrols: " << m.num_controls() << "\nstack_symbols: " << m.num_symbols()
          << "\nactions: " << m.num_actions() << "\nrules: " << m.rules().size()
          << "\nfully_probabilistic: " << yes_no(r.fully_probabilistic) << "\nstandard: " << yes_no(r.standard)
          << "\nbpa: " << yes_no(r.bpa) << "\noca: " << yes_no(r.oca);
      if (r.oca) {
        out << " (counter " << m.symbol_name(*r.counter_symbol) << ", bottom " << m.symbol_name(*r.bottom_symbol)
            << ")";
      }
      out << "\nvpda: " << yes_no(r.vpda) << "\n";
      if (!r.diagnostics.empty()) {
        out << "diagnostics:\n";
        for (const auto& d : r.diagnostics) out << "  " << d << "\n";
      }
      break;
    }
    case format::FileKind::Afa: {
      auto afa = format::parse_afa(text);
      out << "kind: afa\nstates: " << afa.states.size() << "\ninitial: " << afa.states[afa.initial] << "\n";
      break;
    }
    case format::FileKind::Game: {
      auto g = format::parse_game(text);
      out << "kind: game\ncontrols: " << g.machine.num_controls() << "\nstack_symbols: " << g.machine.num_symbols()
          << "\nrules: " << g.machine.rules().size() << "\n";
      break;
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------- classes

int cmd_classes(const std::string& path, std::ostream& out) {
  std::string text = read_file(path);
  if (format::detect_kind(text) != format::FileKind::Plts) throw InvalidInput("classes needs a plts file");
  Plts l = format::parse_plts(text);
  Partition p = bisim_finite(l);
  for (const auto& b : p.blocks()) out << block_string(l, b) << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------- check

struct Verdict {
  enum Kind { Bisimilar, NotBisimilar, Unknown } kind = Unknown;
  std::optional<std::size_t> level;
  std::string method;
  std::vector<std::string> evidence;
  std::string reason;
  bool resource = false;  // unknown because a guard stopped the search
};

int report(const Verdict& v, std::ostream& out) {
  out << "verdict: ";
  switch (v.kind) {
    case Verdict::Bisimilar: out << "bisimilar"; break;
    case Verdict::NotBisimilar:
      out << "not-bisimilar";
      if (v.level) out << "(n=" << *v.level << ")";
      break;
    case Verdict::Unknown: out << "unknown"; break;
  }
  out << "\nmethod: " << v.method << "\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  for (const auto& e : v.evidence) out << "evidence: " << e << "\n";
  if (v.kind == Verdict::Bisimilar) return kSuccess;
  if (v.kind == Verdict::NotBisimilar) return kNotBisimilar;
  return v.resource ? kResourceGuard : kUnknown;
}

/// Least n with s and t not n-equivalent, by refinement from the trivial partition.
std::optional<std::size_t> finite_level(const Plts& l, StateId s, StateId t) {
  Partition p = Partition::trivial(l.num_states());
  for (std::size_t n = 1;; ++n) {
    Partition next = refine_step(l, p);
    if (!next.same_block(s, t)) return n;
    if (next.num_blocks() == p.num_blocks()) return std::nullopt;
    p = std::move(next);
  }
}

Verdict decide_finite(const Plts& l, StateId s, StateId t, const std::string& method) {
  Verdict v;
  v.method = method;
  auto level = finite_level(l, s, t);
  if (!level) {
    v.kind = Verdict::Bisimilar;
    v.evidence.push_back("same class of the coarsest bisimulation (" + std::to_string(l.num_states()) + " states)");
    return v;
  }
  v.kind = Verdict::NotBisimilar;
  v.level = level;
  if (l.num_states() <= 2000) {
    game::Solver solver(l);
    if (auto m = solver.winning_move(game::PairPos{s, t}, *level)) {
      v.evidence.push_back("Attacker wins within " + std::to_string(*level) + " rounds, opening with " +
                           game::move_string(l, *m));
    }
  }
  return v;
}

std::optional<oca::CounterConfig> counter_of(const Ppda& m, const format::ConfigSpec& spec) {
  auto r = classify(m);
  if (!r.oca) return std::nullopt;
  const SymbolId i = *r.counter_symbol, z = *r.bottom_symbol;
  BigInt count = 0;
  for (std::size_t k = 0; k < spec.runs.size(); ++k) {
    const auto& [s, n] = spec.runs[k];
    const bool last = k + 1 == spec.runs.size();
    if (last) {
      if (s != z || n != 1) return std::nullopt;
    } else if (s != i) {
      return std::nullopt;
    } else {
      count += n;
    }
  }
  if (spec.runs.empty() || !count.fits_ulong_p()) return std::nullopt;
  return oca::CounterConfig{spec.control, count.get_ui()};
}

struct CheckOptions {
  std::string method = "auto";
  std::size_t n = 10;
  std::size_t budget = 100000;
  std::uint64_t cap = 64;
};

Verdict bounded_search(oracle::LazySystem& sys, oracle::NodeId a, oracle::NodeId b, std::size_t n,
                       const std::string& method) {
  oracle::BoundedOracle o(sys);
  Verdict v;
  v.method = method;
  if (auto level = o.distinguishing_level(a, b, n)) {
    v.kind = Verdict::NotBisimilar;
    v.level = level;
    v.evidence.push_back("not " + std::to_string(*level) + "-equivalent by direct evaluation");
  } else {
    v.reason = "equivalent up to n=" + std::to_string(n) + "; the method cannot decide beyond the bound";
  }
  return v;
}

Verdict check_ppda(const Ppda& m, const format::ConfigSpec& s1, const format::ConfigSpec& s2,
                   const CheckOptions& opt) {
  const std::string& method = opt.method;
  const SubclassReport rep = classify(m);
  auto counters = std::make_pair(counter_of(m, s1), counter_of(m, s2));
  const bool counter_shaped = counters.first && counters.second;
  std::string fallback_note;

  if (method == "finite" || method == "auto") {
    try {
      Config c1 = format::expand(s1, kMaxStackHeight), c2 = format::expand(s2, kMaxStackHeight);
      Fragment f = reachable_fragment(m, {c1, c2}, std::nullopt, opt.budget);
      Verdict v = decide_finite(f.plts, f.index.at(c1), f.index.at(c2), "finite");
      v.evidence.push_back("reachable configurations: " + std::to_string(f.plts.num_states()));
      return v;
    } catch (const BudgetExceeded& e) {
      if (method == "finite") {
        Verdict v;
        v.method = "finite";
        v.resource = true;
        v.reason = std::string(e.what()) + " (" + std::to_string(e.partial_size()) + " configurations explored)";
        return v;
      }
      fallback_note = "reachable part exceeds " + std::to_string(opt.budget) + " configurations";
    } catch (const SizeGuard& e) {
      if (method == "finite") throw;
      fallback_note = e.what();
    }
  }
  if (method == "vpda" || (method == "auto" && rep.vpda)) {
    if (!rep.vpda) throw InvalidInput("method vpda needs a visibly pushdown machine with an action partition");
    Config c1 = format::expand(s1, kMaxStackHeight), c2 = format::expand(s2, kMaxStackHeight);
    Verdict v;
    v.method = "vpda";
    if (vpda::vpda_decide(m, c1, c2)) {
      v.kind = Verdict::Bisimilar;
      v.evidence.push_back("force relation does not separate the configurations");
    } else {
      v.kind = Verdict::NotBisimilar;
      oracle::PpdaSystem sys(m);
      oracle::BoundedOracle o(sys);
      v.level = o.distinguishing_level(sys.node(c1), sys.node(c2), opt.n);
      v.evidence.push_back(v.level ? "confirmed by direct evaluation"
                                   : "separating level above n=" + std::to_string(opt.n));
    }
    if (!fallback_note.empty()) v.evidence.push_back(fallback_note);
    return v;
  }
  if (method == "oca-filter" || (method == "auto" && rep.oca && counter_shaped)) {
    if (!rep.oca) throw InvalidInput("method oca-filter needs a one-counter machine");
    if (!counter_shaped) throw InvalidInput("oca-filter needs configurations of the shape q I^m Z");
    auto f = oca::not_bisim_filter(m, *counters.first, *counters.second, opt.cap);
    oca::OcaSystem sys(m);
    Verdict v = bounded_search(sys, sys.node(*counters.first), sys.node(*counters.second), opt.n, "oca-filter+bounded");
    v.evidence.insert(v.evidence.begin(), f.evidence);
    if (f.verdict == oca::FilterVerdict::NotBisimilar) {
      v.kind = Verdict::NotBisimilar;
      v.evidence.push_back("distances to INC differ");
      v.reason.clear();
    } else if (v.kind == Verdict::Unknown) {
      v.reason = "filter inconclusive; " + v.reason;
    }
    if (!fallback_note.empty()) v.evidence.push_back(fallback_note);
    return v;
  }
  if (method == "bounded" || method == "auto") {
    Verdict v;
    if (counter_shaped) {
      oca::OcaSystem sys(m);
      v = bounded_search(sys, sys.node(*counters.first), sys.node(*counters.second), opt.n, "bounded");
    } else {
      oracle::PpdaSystem sys(m);
      Config c1 = format::expand(s1, kMaxStackHeight), c2 = format::expand(s2, kMaxStackHeight);
      v = bounded_search(sys, sys.node(c1), sys.node(c2), opt.n, "bounded");
    }
    if (!fallback_note.empty()) v.evidence.push_back(fallback_note);
    return v;
  }
  throw InvalidInput("unknown method '" + method + "'");
}

int cmd_check(const std::string& path, const std::string& cfg1, const std::string& cfg2, const CheckOptions& opt,
              std::ostream& out) {
  std::string text = read_file(path);
  auto kind = format::detect_kind(text);
  if (kind == format::FileKind::Plts) {
    if (opt.method != "auto" && opt.method != "finite" && opt.method != "bounded") {
      throw InvalidInput("method " + opt.method + " needs a pushdown machine");
    }
    Plts l = format::parse_plts(text);
    auto s = l.find_state(cfg1), t = l.find_state(cfg2);
    if (!s) throw InvalidInput("unknown state '" + cfg1 + "'");
    if (!t) throw InvalidInput("unknown state '" + cfg2 + "'");
    if (opt.method == "bounded") {
      oracle::PltsSystem sys(l);
      return report(bounded_search(sys, *s, *t, opt.n, "bounded"), out);
    }
    return report(decide_finite(l, *s, *t, "finite"), out);
  }
  if (kind != format::FileKind::Ppda) throw InvalidInput("check needs a plts or ppda file");
  Ppda m = format::parse_ppda(text);
  return report(check_ppda(m, format::parse_config(m, cfg1), format::parse_config(m, cfg2), opt), out);
}

// ---------------------------------------------------------------- reduce

int cmd_reduce(const std::string& path, std::string mode, std::size_t cap, std::ostream& out) {
  std::string text = read_file(path);
  auto kind = format::detect_kind(text);
  if (kind == format::FileKind::Plts) {
    if (mode.empty()) mode = "plts";
    if (mode != "plts") throw InvalidInput("a plts file can only be reduced with --mode plts");
    out << format::serialize(lift_plts(format::parse_plts(text), cap).plts);
    return kSuccess;
  }
  if (kind != format::FileKind::Ppda) throw InvalidInput("reduce needs a plts or ppda file");
  Ppda m = format::parse_ppda(text);
  if (mode.empty() || mode == "stack") {
    out << format::serialize(lift_ppda_stack(m, cap).ppda);
  } else if (mode == "state") {
    out << format::serialize(lift_ppda_state(m, cap).ppda);
  } else if (mode == "plts") {
    throw InvalidInput("--mode plts needs a plts file");
  } else {
    throw InvalidInput("unknown mode '" + mode + "'");
  }
  return kSuccess;
}

// ---------------------------------------------------------------- gen

void emit(const std::string& instance, const json& manifest, const std::string& prefix, const std::string& ext,
          std::ostream& out) {
  if (prefix.empty()) {
    out << instance << "// manifest: " << manifest.dump() << "\n";
    return;
  }
  std::ofstream(prefix + ext) << instance;
  std::ofstream(prefix + ".manifest.json") << manifest.dump(2) << "\n";
  out << "wrote " << prefix << ext << " and " << prefix << ".manifest.json\n";
}

int cmd_gen_afa(const std::string& path, std::size_t horizon, const std::string& prefix, std::ostream& out) {
  auto afa = format::parse_afa(read_file(path));
  auto red = gadgets::afa_to_poca(afa);
  auto table = gadgets::acc_table(afa, horizon);
  const Ppda& m = red.machine;
  json acc = json::object(), pairs = json::array();
  bool accepted = false;
  for (std::size_t q = 0; q < afa.states.size(); ++q) {
    std::vector<bool> row;
    for (std::size_t n = 0; n <= horizon; ++n) {
      row.push_back(table[n][q]);
      const ControlId c = *m.find_control(afa.states[q]);
      const ControlId cp = *m.find_control(afa.states[q] + "_prime");
      pairs.push_back({{"left", oca::counter_name(m, {c, n})},
                       {"right", oca::counter_name(m, {cp, n})},
                       {"bisimilar", !table[n][q]}});
    }
    acc[afa.states[q]] = row;
  }
  for (std::size_t n = 0; n <= horizon; ++n) accepted = accepted || table[n][afa.initial];
  json manifest = {{"kind", "afa"},
                   {"left", config_name(m, red.left)},
                   {"right", config_name(m, red.right)},
                   {"horizon", horizon},
                   {"acc", acc},
                   {"pairs", pairs},
                   {"accepts_within_horizon", accepted},
                   {"expected",
                    accepted ? "not-bisimilar" : "bisimilar if no word longer than the horizon is accepted"},
                   {"provenance", "acceptance table of the automaton"}};
  emit(format::serialize(m), manifest, prefix, ".ppda", out);
  return kSuccess;
}

int cmd_gen_game(const std::string& path, std::size_t budget, const std::string& prefix, std::ostream& out) {
  auto g = format::parse_game(read_file(path));
  auto red = gadgets::game_to_pvpda(g);
  json manifest = {{"kind", "game"},
                   {"left", config_name(red.machine, red.left)},
                   {"right", config_name(red.machine, red.right)},
                   {"provenance", "attractor winner on the explicit game graph"}};
  try {
    auto w = gadgets::solve_reach_game_finite(g, budget);
    manifest["winner"] = gadgets::winner_name(w);
    manifest["expected"] = w == gadgets::Winner::Player0 ? "bisimilar" : "not-bisimilar";
  } catch (const BudgetExceeded&) {
    manifest["winner"] = nullptr;
    manifest["expected"] = "unknown";
  }
  emit(format::serialize(red.machine), manifest, prefix, ".ppda", out);
  return kSuccess;
}

int cmd_gen_gadget(const std::string& which, bool t1_equiv, bool t2_equiv, const std::string& prefix,
                   std::ostream& out) {
  if (which != "and" && which != "or") throw InvalidInput("gadget must be 'and' or 'or'");
  Plts l;
  const ActionId a = l.add_action("a");
  // chain_k makes exactly k steps, so chains of different length are never equivalent
  auto chain = [&](const std::string& name, std::size_t k) {
    StateId head = l.add_state(name);
    StateId cur = head;
    for (std::size_t i = 1; i <= k; ++i) {
      StateId next = l.add_state(name + "_" + std::to_string(i));
      l.add_transition(cur, a, Dist::dirac(next));
      cur = next;
    }
    return head;
  };
  StateId s = l.add_state("s"), s2 = l.add_state("s_prime");
  StateId t1 = chain("t1", 1), t1p = chain("t1_prime", t1_equiv ? 1 : 2);
  StateId t2 = chain("t2", 3), t2p = chain("t2_prime", t2_equiv ? 3 : 4);
  bool expected;
  if (which == "and") {
    gadgets::and_gadget(l, s, s2, t1, t1p, t2, t2p, a);
    expected = t1_equiv && t2_equiv;
  } else {
    gadgets::or_gadget(l, s, s2, t1, t1p, t2, t2p, a, "");
    expected = t1_equiv || t2_equiv;
  }
  json manifest = {{"kind", which + "_gadget"},
                   {"left", "s"},
                   {"right", "s_prime"},
                   {"t1_equivalent", t1_equiv},
                   {"t2_equivalent", t2_equiv},
                   {"expected", expected ? "bisimilar" : "not-bisimilar"},
                   {"provenance", which == "and" ? "gadget conjunction" : "gadget disjunction"}};
  emit(format::serialize(l), manifest, prefix, ".plts", out);
  return kSuccess;
}

// ---------------------------------------------------------------- norms

int cmd_norms(const std::string& path, std::ostream& out) {
  Ppda m = format::parse_ppda(read_file(path));
  auto t = bpa::norms(m);
  out << "symbol macrosteps lifted\n";
  for (SymbolId x = 0; x < m.num_symbols(); ++x) {
    out << m.symbol_name(x) << " ";
    if (t.norm[x]) out << t.norm[x]->get_str() << " " << BigInt(3 * *t.norm[x]).get_str() << "\n";
    else out << "unnormed unnormed\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------- play

int cmd_play(const std::string& path, const std::string& cfg1, const std::string& cfg2, const std::string& side,
             std::size_t horizon, std::istream& in, std::ostream& out) {
  game::Player human;
  if (side == "attacker") human = game::Player::Attacker;
  else if (side == "defender") human = game::Player::Defender;
  else throw InvalidInput("side must be 'attacker' or 'defender'");
  game::Session session("1", service::make_setup(read_file(path), cfg1, cfg2, human, horizon, path));
  std::size_t shown = 0;
  for (;;) {
    game::SessionView v = session.view();
    const Plts& l = *v.plts;
    for (; shown < v.history.size(); ++shown) {
      const auto& h = v.history[shown];
      out << "round " << h.round << ": " << game::player_name(h.actor) << " " << game::move_string(l, h.move) << "\n";
    }
    if (v.outcome != game::Outcome::Ongoing) {
      out << "result: " << game::outcome_name(v.outcome) << " after " << v.rounds_completed << " rounds\n";
      return kSuccess;
    }
    out << "position: " << game::position_string(l, v.position) << "\n";
    for (std::size_t i = 0; i < v.legal.size(); ++i) out << "  [" << i << "] " << game::move_string(l, v.legal[i]) << "\n";
    out << "move> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << "\nstopped\n";
      return kSuccess;
    }
    if (line == "q" || line == "quit") return kSuccess;
    std::size_t idx;
    try {
      idx = std::stoul(line);
    } catch (const std::exception&) {
      out << "enter a move number\n";
      continue;
    }
    if (idx >= v.legal.size()) {
      out << "no move " << idx << "\n";
      continue;
    }
    session.play(v.legal[idx]);
  }
}

// ---------------------------------------------------------------- serve

int cmd_serve(const std::string& host, int port, const std::vector<std::string>& models, std::ostream& out) {
  service::SessionService svc;
  for (const auto& path : models) {
    std::string text = read_file(path);
    format::detect_kind(text);
    svc.add_model({std::filesystem::path(path).stem().string(), text});
  }
  out << "serving on " << host << ":" << port << "\n" << std::flush;
  service::serve_http(svc, host, port);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic bisimilarity toolkit", "pbisim"};
  app.require_subcommand(1);

  std::string file, cfg1, cfg2, mode, side = "defender", host = "127.0.0.1", gadget;
  std::string t1 = "equiv", t2 = "equiv", prefix;
  CheckOptions check;
  std::size_t cap = kDefaultLiftCap, horizon = 3, budget = 100000;
  int port = 8080;
  std::vector<std::string> models;

  auto* validate = app.add_subcommand("validate", "parse a file and report its class");
  validate->add_option("file", file)->required();
  auto* classes = app.add_subcommand("classes", "bisimilarity classes of a finite pLTS");
  classes->add_option("file", file)->required();

  auto* chk = app.add_subcommand("check", "decide or bound bisimilarity of two states or configurations");
  chk->add_option("file", file)->required();
  chk->add_option("cfg1", cfg1)->required();
  chk->add_option("cfg2", cfg2)->required();
  chk->add_option("--n", check.n, "bound for the bounded search");
  chk->add_option("--method", check.method)
      ->check(CLI::IsMember({"auto", "finite", "vpda", "oca-filter", "bounded"}));
  chk->add_option("--budget", check.budget, "configuration budget for explicit expansion");
  chk->add_option("--cap", check.cap, "extra counter range for the distance search");

  auto* reduce = app.add_subcommand("reduce", "emit the nondeterministic system");
  reduce->add_option("file", file)->required();
  reduce->add_option("--mode", mode)->check(CLI::IsMember({"plts", "stack", "state"}));
  reduce->add_option("--cap", cap, "size guard for the construction");

  auto* gen = app.add_subcommand("gen", "instance generators with expected verdicts");
  gen->require_subcommand(1);
  auto* gen_afa = gen->add_subcommand("afa", "one-counter instance from a one-letter alternating automaton");
  gen_afa->add_option("file", file)->required();
  gen_afa->add_option("--horizon", horizon);
  gen_afa->add_option("--out", prefix);
  auto* gen_game = gen->add_subcommand("game", "visibly pushdown instance from a reachability game");
  gen_game->add_option("file", file)->required();
  gen_game->add_option("--budget", budget);
  gen_game->add_option("--out", prefix);
  auto* gen_gadget = gen->add_subcommand("gadget", "AND or OR gadget over chains");
  gen_gadget->add_option("which", gadget)->required()->check(CLI::IsMember({"and", "or"}));
  gen_gadget->add_option("--t1", t1)->check(CLI::IsMember({"equiv", "distinct"}));
  gen_gadget->add_option("--t2", t2)->check(CLI::IsMember({"equiv", "distinct"}));
  gen_gadget->add_option("--out", prefix);

  auto* norms = app.add_subcommand("norms", "norm table of a BPA");
  norms->add_option("file", file)->required();

  auto* play = app.add_subcommand("play", "play the bisimulation game in the terminal");
  play->add_option("file", file)->required();
  play->add_option("cfg1", cfg1)->required();
  play->add_option("cfg2", cfg2)->required();
  play->add_option("--side", side)->check(CLI::IsMember({"attacker", "defender"}));
  play->add_option("--horizon", horizon);

  auto* serve = app.add_subcommand("serve", "HTTP session API");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--model", models, "model files offered to clients");

  std::vector<std::string> argv_store{"pbisim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*validate) return cmd_validate(file, out);
    if (*classes) return cmd_classes(file, out);
    if (*chk) return cmd_check(file, cfg1, cfg2, check, out);
    if (*reduce) return cmd_reduce(file, mode, cap, out);
    if (*gen_afa) return cmd_gen_afa(file, horizon, prefix, out);
    if (*gen_game) return cmd_gen_game(file, budget, prefix, out);
    if (*gen_gadget) return cmd_gen_gadget(gadget, t1 == "equiv", t2 == "equiv", prefix, out);
    if (*norms) return cmd_norms(file, out);
    if (*play) return cmd_play(file, cfg1, cfg2, side, horizon, in, out);
    if (*serve) return cmd_serve(host, port, models, out);
  } catch (const ParseError& e) {
    err << "error: " << file << ":" << e.what() << "\n";
    return kInputError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SizeGuard& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const BudgetExceeded& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const IllegalMove& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace pbisim::cli
