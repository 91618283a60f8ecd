#include "pbisim/format.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "pbisim/error.hpp"

namespace pbisim::format {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> lex(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto c = raw.find("//"); c != std::string::npos) raw.erase(c);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) { throw ParseError(l.number, t.column, msg); }
[[noreturn]] void fail(const Line& l, const std::string& msg) { throw ParseError(l.number, 1, msg); }

bool is_probability(const std::string& s) { return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0])); }

void check_name(const Line& l, const Token& t) {
  const std::string& s = t.text;
  if (is_probability(s) || s == "+" || s == "_" || s.back() == ':' || s.find("->") != std::string::npos) {
    fail(l, t, "invalid name '" + s + "'");
  }
}

Rational parse_prob(const Line& l, const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception&) {
    fail(l, t, "invalid probability '" + t.text + "'");
  }
}

/// Action name of an arrow token "-a->".
std::optional<std::string> arrow_action(const std::string& s) {
  if (s.size() >= 4 && s.rfind("-", 0) == 0 && s.size() >= 3 && s.compare(s.size() - 2, 2, "->") == 0) {
    return s.substr(1, s.size() - 3);
  }
  return std::nullopt;
}

std::size_t find_arrow(const Line& l) {
  for (std::size_t i = 0; i < l.tokens.size(); ++i) {
    if (arrow_action(l.tokens[i].text) || l.tokens[i].text == "->") return i;
  }
  return l.tokens.size();
}

/// Splits the right-hand side into terms "[prob] name...".
struct Term {
  Rational prob;
  bool explicit_prob = false;
  std::vector<Token> names;
};

std::vector<Term> parse_terms(const Line& l, std::size_t from) {
  std::vector<Term> terms;
  Term cur;
  bool empty = true;
  auto flush = [&](const Token& at) {
    if (empty) fail(l, at, "empty term");
    terms.push_back(std::move(cur));
    cur = Term{};
    empty = true;
  };
  if (from >= l.tokens.size()) fail(l, "missing right-hand side");
  for (std::size_t i = from; i < l.tokens.size(); ++i) {
    const Token& t = l.tokens[i];
    if (t.text == "+") {
      flush(t);
      continue;
    }
    if (is_probability(t.text)) {
      if (!empty) fail(l, t, "probability must start a term");
      cur.prob = parse_prob(l, t);
      cur.explicit_prob = true;
      empty = false;
      continue;
    }
    cur.names.push_back(t);
    empty = false;
  }
  flush(l.tokens.back());
  if (terms.size() == 1 && !terms[0].explicit_prob) terms[0].prob = Rational(1);
  for (const auto& term : terms) {
    if (!term.explicit_prob && terms.size() > 1) fail(l, "every term of a sum needs a probability");
    if (term.names.empty()) fail(l, "term without a target");
  }
  return terms;
}

template <class T>
Distribution<T> make_dist(const Line& l, std::vector<std::pair<T, Rational>> entries) {
  try {
    return Distribution<T>(std::move(entries));
  } catch (const InvalidInput& e) {
    fail(l, std::string("bad distribution in rule: ") + e.what());
  }
}

std::vector<std::string> list_after(const Line& l, const std::string& key) {
  if (l.tokens[0].text != key) return {};
  std::vector<std::string> out;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) {
    check_name(l, l.tokens[i]);
    out.push_back(l.tokens[i].text);
  }
  return out;
}

void expect_header(const std::vector<Line>& lines, const std::string& word) {
  if (lines.empty()) throw ParseError(1, 1, "empty file, expected header '" + word + "'");
  if (lines[0].tokens[0].text != word) fail(lines[0], lines[0].tokens[0], "expected header '" + word + "'");
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += " " + s;
  return out;
}

// Shared machine body: controls/stack/actions lists and rules.
struct MachineBody {
  Ppda m;
  std::vector<const Line*> extra;  // lines not understood here
};

MachineBody parse_machine_lines(const std::vector<Line>& lines, std::size_t start,
                                const std::optional<std::string>& default_action) {
  MachineBody b;
  Ppda& m = b.m;
  bool have_controls = false, have_stack = false;
  for (std::size_t li = start; li < lines.size(); ++li) {
    const Line& l = lines[li];
    const std::string& head = l.tokens[0].text;
    if (head == "controls:") {
      for (auto& n : list_after(l, "controls:")) m.add_control(n);
      have_controls = true;
    } else if (head == "stack:") {
      for (auto& n : list_after(l, "stack:")) m.add_symbol(n);
      have_stack = true;
    } else if (head == "actions:") {
      for (auto& n : list_after(l, "actions:")) m.add_action(n);
    } else if (find_arrow(l) < l.tokens.size()) {
      if (!have_controls || !have_stack) fail(l, "rules must follow the controls: and stack: lines");
      std::size_t arrow = find_arrow(l);
      if (arrow != 2) fail(l, l.tokens[0], "rule head must be a control state and one stack symbol");
      auto control = m.find_control(l.tokens[0].text);
      if (!control) fail(l, l.tokens[0], "unknown control state '" + l.tokens[0].text + "'");
      auto symbol = m.find_symbol(l.tokens[1].text);
      if (!symbol) fail(l, l.tokens[1], "unknown stack symbol '" + l.tokens[1].text + "'");
      std::string action_name;
      if (auto a = arrow_action(l.tokens[arrow].text)) {
        action_name = *a;
      } else if (default_action) {
        action_name = *default_action;
      } else {
        fail(l, l.tokens[arrow], "arrow must name an action, as in -a->");
      }
      if (action_name.empty()) fail(l, l.tokens[arrow], "empty action name");
      ActionId a = m.add_action(action_name);
      std::vector<std::pair<HeadTarget, Rational>> entries;
      for (const auto& term : parse_terms(l, arrow + 1)) {
        auto c = m.find_control(term.names[0].text);
        if (!c) fail(l, term.names[0], "unknown control state '" + term.names[0].text + "'");
        HeadTarget t{*c, {}};
        for (std::size_t k = 1; k < term.names.size(); ++k) {
          if (term.names[k].text == "_") continue;
          auto s = m.find_symbol(term.names[k].text);
          if (!s) fail(l, term.names[k], "unknown stack symbol '" + term.names[k].text + "'");
          t.push.push_back(*s);
        }
        if (t.push.size() > 2) fail(l, term.names[0], "a rule may push at most two symbols");
        entries.emplace_back(std::move(t), term.prob);
      }
      m.add_rule({{*control, *symbol}, a, make_dist(l, std::move(entries))});
    } else {
      b.extra.push_back(&l);
    }
  }
  if (!have_controls) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing controls: line");
  if (!have_stack) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing stack: line");
  return b;
}

std::string target_text(const Ppda& m, const HeadTarget& t) {
  std::string out = m.control_name(t.control);
  for (SymbolId s : t.push) out += " " + m.symbol_name(s);
  return out;
}

template <class T, class F>
std::string dist_text(const Distribution<T>& d, F name) {
  if (d.is_dirac()) return name(d.entries()[0].first);
  std::string out;
  for (const auto& [x, p] : d.entries()) {
    if (!out.empty()) out += " + ";
    out += probability_string(p) + " " + name(x);
  }
  return out;
}

std::string rules_text(const Ppda& m, bool show_action) {
  std::string out;
  for (const auto& r : m.rules()) {
    out += m.control_name(r.head.control) + " " + m.symbol_name(r.head.symbol) + " " +
           (show_action ? "-" + m.action_name(r.action) + "->" : std::string("->")) + " " +
           dist_text(r.target, [&](const HeadTarget& t) { return target_text(m, t); }) + "\n";
  }
  return out;
}

BigInt parse_exponent(const std::string& s) {
  if (s.rfind("0b", 0) == 0) {
    if (s.size() == 2 || s.find_first_not_of("01", 2) != std::string::npos) {
      throw InvalidInput("invalid binary exponent '" + s + "'");
    }
    return BigInt(s.substr(2), 2);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidInput("invalid exponent '" + s + "'");
  }
  return BigInt(s, 10);
}

}  // namespace

std::string probability_string(const Rational& r) { return r.str(); }

FileKind detect_kind(const std::string& text) {
  auto lines = lex(text);
  if (lines.empty()) throw ParseError(1, 1, "empty file");
  const std::string& h = lines[0].tokens[0].text;
  if (h == "plts") return FileKind::Plts;
  if (h == "ppda") return FileKind::Ppda;
  if (h == "afa") return FileKind::Afa;
  if (h == "game") return FileKind::Game;
  fail(lines[0], lines[0].tokens[0], "unknown file header '" + h + "', expected plts, ppda, afa or game");
}

Plts parse_plts(const std::string& text) {
  auto lines = lex(text);
  expect_header(lines, "plts");
  if (lines[0].tokens.size() > 1) fail(lines[0], lines[0].tokens[1], "unexpected text after header");
  Plts l;
  bool have_states = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& head = line.tokens[0].text;
    if (head == "states:") {
      for (auto& n : list_after(line, "states:")) {
        if (l.find_state(n)) fail(line, "duplicate state '" + n + "'");
        l.add_state(n);
      }
      have_states = true;
    } else if (head == "actions:") {
      for (auto& n : list_after(line, "actions:")) l.add_action(n);
    } else {
      std::size_t arrow = find_arrow(line);
      if (arrow == line.tokens.size()) fail(line, line.tokens[0], "expected states:, actions: or a transition");
      if (!have_states) fail(line, "transitions must follow the states: line");
      if (arrow != 1) fail(line, line.tokens[0], "transition source must be a single state");
      auto s = l.find_state(head);
      if (!s) fail(line, line.tokens[0], "unknown state '" + head + "'");
      auto a = arrow_action(line.tokens[arrow].text);
      if (!a || a->empty()) fail(line, line.tokens[arrow], "arrow must name an action, as in -a->");
      ActionId act = l.add_action(*a);
      std::vector<std::pair<StateId, Rational>> entries;
      for (const auto& term : parse_terms(line, arrow + 1)) {
        if (term.names.size() != 1) fail(line, term.names[1], "expected a single target state");
        auto t = l.find_state(term.names[0].text);
        if (!t) fail(line, term.names[0], "unknown state '" + term.names[0].text + "'");
        entries.emplace_back(*t, term.prob);
      }
      l.add_transition(*s, act, make_dist(line, std::move(entries)));
    }
  }
  if (!have_states) throw ParseError(lines.back().number, 1, "missing states: line");
  return l;
}

std::string serialize(const Plts& l) {
  std::string out = "plts\nstates:" + join(l.state_names()) + "\nactions:" + join(l.action_names()) + "\n";
  for (const auto& t : l.transitions()) {
    out += l.state_name(t.source) + " -" + l.action_name(t.action) + "-> " +
           dist_text(t.target, [&](StateId s) { return l.state_name(s); }) + "\n";
  }
  return out;
}

Ppda parse_ppda(const std::string& text) {
  auto lines = lex(text);
  expect_header(lines, "ppda");
  // optional vpda(r=a|b,i=c,c=d) partition, possibly spread over several tokens
  std::string partition;
  for (std::size_t i = 1; i < lines[0].tokens.size(); ++i) partition += lines[0].tokens[i].text;
  auto body = parse_machine_lines(lines, 1, std::nullopt);
  if (!body.extra.empty()) {
    const Line& l = *body.extra[0];
    fail(l, l.tokens[0], "expected controls:, stack:, actions: or a rule");
  }
  Ppda m = std::move(body.m);
  if (!partition.empty()) {
    const Line& h = lines[0];
    if (partition.rfind("vpda(", 0) != 0 || partition.back() != ')') {
      fail(h, h.tokens[1], "expected vpda(r=...,i=...,c=...)");
    }
    std::string inner = partition.substr(5, partition.size() - 6);
    std::stringstream groups(inner);
    std::string group;
    while (std::getline(groups, group, ',')) {
      auto eq = group.find('=');
      if (eq == std::string::npos) fail(h, h.tokens[1], "expected key=actions in partition");
      std::string key = group.substr(0, eq);
      ActionClass c;
      if (key == "r") c = ActionClass::Return;
      else if (key == "i") c = ActionClass::Internal;
      else if (key == "c") c = ActionClass::Call;
      else fail(h, h.tokens[1], "unknown action class '" + key + "'");
      std::stringstream names(group.substr(eq + 1));
      std::string name;
      while (std::getline(names, name, '|')) {
        if (name.empty()) continue;
        m.set_action_class(m.add_action(name), c);
      }
    }
  }
  return m;
}

std::string serialize(const Ppda& m) {
  std::string out = "ppda";
  if (m.has_action_partition()) {
    std::map<ActionClass, std::vector<std::string>> by;
    for (ActionId a = 0; a < m.num_actions(); ++a) by[*m.action_class(a)].push_back(m.action_name(a));
    auto list = [&](ActionClass c) {
      std::string s;
      for (const auto& n : by[c]) s += (s.empty() ? "" : "|") + n;
      return s;
    };
    out += " vpda(r=" + list(ActionClass::Return) + ",i=" + list(ActionClass::Internal) +
           ",c=" + list(ActionClass::Call) + ")";
  }
  out += "\ncontrols:" + join(m.control_names()) + "\nstack:" + join(m.symbol_names()) +
         "\nactions:" + join(m.action_names()) + "\n";
  return out + rules_text(m, true);
}

gadgets::OneLetterAfa parse_afa(const std::string& text) {
  auto lines = lex(text);
  expect_header(lines, "afa");
  gadgets::OneLetterAfa afa;
  std::map<std::string, std::size_t> index;
  std::optional<std::string> initial;
  std::vector<std::string> accepting;
  std::vector<bool> defined;
  auto state = [&](const Line& l, const Token& t) {
    auto it = index.find(t.text);
    if (it == index.end()) fail(l, t, "unknown state '" + t.text + "'");
    return it->second;
  };
  const Line* initial_line = nullptr;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& l = lines[li];
    const std::string& head = l.tokens[0].text;
    if (head == "states:") {
      for (auto& n : list_after(l, "states:")) {
        if (index.count(n)) fail(l, "duplicate state '" + n + "'");
        index[n] = afa.states.size();
        afa.states.push_back(n);
      }
      afa.delta.resize(afa.states.size());
      afa.accepting.assign(afa.states.size(), false);
      defined.assign(afa.states.size(), false);
    } else if (head == "initial:") {
      if (l.tokens.size() != 2) fail(l, "expected one initial state");
      afa.initial = state(l, l.tokens[1]);
      initial = head;
      initial_line = &l;
    } else if (head == "accepting:") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) afa.accepting[state(l, l.tokens[i])] = true;
    } else {
      if (l.tokens.size() != 5 || l.tokens[1].text != "->" ||
          (l.tokens[3].text != "&" && l.tokens[3].text != "|")) {
        fail(l, l.tokens[0], "expected 'q -> q1 & q2' or 'q -> q1 | q2'");
      }
      std::size_t q = state(l, l.tokens[0]);
      if (defined[q]) fail(l, l.tokens[0], "transition of '" + head + "' defined twice");
      defined[q] = true;
      afa.delta[q] = {l.tokens[3].text == "&" ? gadgets::AfaOp::And : gadgets::AfaOp::Or, state(l, l.tokens[2]),
                      state(l, l.tokens[4])};
    }
  }
  (void)initial_line;
  if (afa.states.empty()) throw ParseError(lines.back().number, 1, "missing states: line");
  if (!initial) throw ParseError(lines.back().number, 1, "missing initial: line");
  for (std::size_t q = 0; q < defined.size(); ++q) {
    if (!defined[q]) throw ParseError(lines.back().number, 1, "no transition for state '" + afa.states[q] + "'");
  }
  return afa;
}

std::string serialize(const gadgets::OneLetterAfa& afa) {
  std::string out = "afa\nstates:" + join(afa.states) + "\ninitial: " + afa.states.at(afa.initial) + "\naccepting:";
  for (std::size_t q = 0; q < afa.states.size(); ++q) {
    if (afa.accepting[q]) out += " " + afa.states[q];
  }
  out += "\n";
  for (std::size_t q = 0; q < afa.states.size(); ++q) {
    const auto& d = afa.delta[q];
    out += afa.states[q] + " -> " + afa.states[d.q1] + (d.op == gadgets::AfaOp::And ? " & " : " | ") +
           afa.states[d.q2] + "\n";
  }
  return out;
}

gadgets::ReachGame parse_game(const std::string& text) {
  auto lines = lex(text);
  expect_header(lines, "game");
  auto body = parse_machine_lines(lines, 1, std::string("a"));
  gadgets::ReachGame g;
  g.machine = std::move(body.m);
  g.player1.assign(g.machine.num_controls(), false);
  bool have_initial = false;
  for (const Line* lp : body.extra) {
    const Line& l = *lp;
    if (l.tokens[0].text == "player1:") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        auto c = g.machine.find_control(l.tokens[i].text);
        if (!c) fail(l, l.tokens[i], "unknown control state '" + l.tokens[i].text + "'");
        g.player1[*c] = true;
      }
    } else if (l.tokens[0].text == "initial:") {
      if (l.tokens.size() != 3) fail(l, "expected 'initial: p X'");
      auto c = g.machine.find_control(l.tokens[1].text);
      if (!c) fail(l, l.tokens[1], "unknown control state '" + l.tokens[1].text + "'");
      auto s = g.machine.find_symbol(l.tokens[2].text);
      if (!s) fail(l, l.tokens[2], "unknown stack symbol '" + l.tokens[2].text + "'");
      g.initial = {*c, *s};
      have_initial = true;
    } else {
      fail(l, l.tokens[0], "expected controls:, stack:, player1:, initial: or a rule");
    }
  }
  if (!have_initial) throw ParseError(lines.back().number, 1, "missing initial: line");
  try {
    g.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(lines.back().number, 1, e.what());
  }
  return g;
}

std::string serialize(const gadgets::ReachGame& g) {
  const Ppda& m = g.machine;
  std::string out = "game\ncontrols:" + join(m.control_names()) + "\nstack:" + join(m.symbol_names()) + "\nplayer1:";
  for (ControlId c = 0; c < m.num_controls(); ++c) {
    if (g.player1[c]) out += " " + m.control_name(c);
  }
  out += "\ninitial: " + m.control_name(g.initial.control) + " " + m.symbol_name(g.initial.symbol) + "\n";
  return out + rules_text(m, false);
}

ConfigSpec parse_config(const Ppda& m, const std::string& text) {
  std::vector<std::string> parts;
  {
    std::istringstream in(text);
    std::string w;
    while (in >> w) parts.push_back(w);
  }
  if (parts.empty()) throw InvalidInput("empty configuration");
  ConfigSpec out;
  auto longest = [&](const std::string& s, std::size_t pos, bool control) {
    std::size_t best = 0;
    std::optional<std::uint32_t> id;
    const auto& names = control ? m.control_names() : m.symbol_names();
    for (std::uint32_t i = 0; i < names.size(); ++i) {
      const auto& n = names[i];
      if (n.size() > best && s.compare(pos, n.size(), n) == 0) {
        best = n.size();
        id = i;
      }
    }
    return std::make_pair(id, best);
  };
  // splits "name^exp" or concatenations into runs
  auto read_symbols = [&](const std::string& s, std::size_t pos) {
    while (pos < s.size()) {
      if (s[pos] == '_' && pos + 1 == s.size() && !m.find_symbol("_")) return;
      auto [id, len] = longest(s, pos, false);
      if (!id) throw InvalidInput("unknown stack symbol at '" + s.substr(pos) + "' in configuration '" + text + "'");
      pos += len;
      BigInt count = 1;
      if (pos < s.size() && s[pos] == '^') {
        std::size_t end = pos + 1;
        if (s.compare(end, 2, "0b") == 0) {
          end += 2;
          while (end < s.size() && (s[end] == '0' || s[end] == '1')) ++end;
        } else {
          while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        }
        count = parse_exponent(s.substr(pos + 1, end - pos - 1));
        pos = end;
      }
      if (count > 0) out.runs.emplace_back(*id, count);
    }
  };
  if (parts.size() == 1) {
    auto [id, len] = longest(parts[0], 0, true);
    if (!id) throw InvalidInput("unknown control state in configuration '" + text + "'");
    out.control = *id;
    read_symbols(parts[0], len);
  } else {
    auto c = m.find_control(parts[0]);
    if (!c) throw InvalidInput("unknown control state '" + parts[0] + "'");
    out.control = *c;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      if (parts[i] == "_") continue;
      read_symbols(parts[i], 0);
    }
  }
  return out;
}

Config expand(const ConfigSpec& c, std::size_t max_height) {
  BigInt total = 0;
  for (const auto& [_, n] : c.runs) total += n;
  if (total > BigInt(static_cast<unsigned long>(max_height))) {
    throw SizeGuard("configuration stack height " + total.get_str() + " exceeds the limit " +
                    std::to_string(max_height));
  }
  Config out{c.control, {}};
  for (const auto& [s, n] : c.runs) out.stack.insert(out.stack.end(), n.get_ui(), s);
  return out;
}

}  // namespace pbisim::format
