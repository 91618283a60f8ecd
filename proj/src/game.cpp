#include "pbisim/game.hpp"

#include <algorithm>

#include "pbisim/error.hpp"
#include "pbisim/lift.hpp"

namespace pbisim::game {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

StateId side_state(const PairPos& p, Side s) { return s == Side::Left ? p.left : p.right; }

std::vector<std::pair<ActionId, Dist>> sorted_transitions(const Plts& plts, StateId s) {
  std::vector<std::pair<ActionId, Dist>> out;
  for (std::size_t i : plts.outgoing(s)) {
    const auto& t = plts.transitions()[i];
    out.emplace_back(t.action, t.target);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string dist_string(const Plts& plts, const Dist& d) {
  std::string out;
  for (const auto& [s, w] : d.entries()) {
    if (!out.empty()) out += " + ";
    out += w.str() + " " + plts.state_name(s);
  }
  return out;
}

std::string set_string(const Plts& plts, const std::vector<StateId>& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += plts.state_name(set[i]);
  }
  return out + "}";
}

bool ends_round(const Move& m) { return std::holds_alternative<RespondPick>(m); }

}  // namespace

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }
const char* player_name(Player p) { return p == Player::Attacker ? "attacker" : "defender"; }

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::AttackerWins: return "attacker_wins";
    case Outcome::DefenderWins: return "defender_wins";
  }
  return "?";
}

Player owner(const Position& pos) {
  return std::visit(overloaded{[](const PairPos&) { return Player::Attacker; },
                               [](const DefTrans&) { return Player::Defender; },
                               [](const DistPair&) { return Player::Attacker; },
                               [](const DefSubset&) { return Player::Defender; },
                               [](const SetPair&) { return Player::Attacker; },
                               [](const DefPick&) { return Player::Defender; }},
                    pos);
}

Player actor(const Move& move) {
  return std::visit(overloaded{[](const ChooseTransition&) { return Player::Attacker; },
                               [](const RespondTransition&) { return Player::Defender; },
                               [](const ChooseSubset&) { return Player::Attacker; },
                               [](const RespondSubset&) { return Player::Defender; },
                               [](const PickState&) { return Player::Attacker; },
                               [](const RespondPick&) { return Player::Defender; }},
                    move);
}

std::vector<Move> legal_moves(const Plts& plts, const Position& pos) {
  std::vector<Move> out;
  std::visit(
      overloaded{
          [&](const PairPos& p) {
            for (Side side : {Side::Left, Side::Right}) {
              for (auto& [a, d] : sorted_transitions(plts, side_state(p, side))) {
                out.push_back(ChooseTransition{side, a, d});
              }
            }
          },
          [&](const DefTrans& p) {
            for (auto& [a, d] : sorted_transitions(plts, p.other)) {
              if (a == p.action) out.push_back(RespondTransition{a, d});
            }
          },
          [&](const DistPair& p) {
            for (Side side : {Side::Left, Side::Right}) {
              const Dist& d = side == Side::Left ? p.left : p.right;
              for (auto& sub : nonempty_subsets(d.support())) out.push_back(ChooseSubset{side, sub});
            }
          },
          [&](const DefSubset& p) {
            for (auto& sub : nonempty_subsets(p.other.support())) {
              if (p.other.mass_of(sub) >= p.rho) out.push_back(RespondSubset{sub});
            }
          },
          [&](const SetPair& p) {
            for (StateId s : p.left) out.push_back(PickState{Side::Left, s});
            for (StateId s : p.right) out.push_back(PickState{Side::Right, s});
          },
          [&](const DefPick& p) {
            for (StateId s : p.other) out.push_back(RespondPick{s});
          }},
      pos);
  return out;
}

Position apply_move(const Plts& plts, const Position& pos, const Move& move) {
  auto legal = legal_moves(plts, pos);
  if (std::find(legal.begin(), legal.end(), move) == legal.end()) {
    throw IllegalMove("move '" + move_string(plts, move) + "' is not legal in position " +
                      position_string(plts, pos));
  }
  return std::visit(
      overloaded{
          [&](const PairPos& p) -> Position {
            const auto& m = std::get<ChooseTransition>(move);
            return DefTrans{m.side, m.action, m.target, side_state(p, other(m.side))};
          },
          [&](const DefTrans& p) -> Position {
            const auto& m = std::get<RespondTransition>(move);
            if (p.attacked == Side::Left) return DistPair{p.chosen, m.target};
            return DistPair{m.target, p.chosen};
          },
          [&](const DistPair& p) -> Position {
            const auto& m = std::get<ChooseSubset>(move);
            const Dist& chosen = m.side == Side::Left ? p.left : p.right;
            const Dist& rest = m.side == Side::Left ? p.right : p.left;
            return DefSubset{m.side, m.subset, rest, chosen.mass_of(m.subset)};
          },
          [&](const DefSubset& p) -> Position {
            const auto& m = std::get<RespondSubset>(move);
            if (p.chosen_side == Side::Left) return SetPair{p.subset, m.subset};
            return SetPair{m.subset, p.subset};
          },
          [&](const SetPair& p) -> Position {
            const auto& m = std::get<PickState>(move);
            return DefPick{m.side, m.state, m.side == Side::Left ? p.right : p.left};
          },
          [&](const DefPick& p) -> Position {
            const auto& m = std::get<RespondPick>(move);
            if (p.chosen_side == Side::Left) return PairPos{p.state, m.state};
            return PairPos{m.state, p.state};
          }},
      pos);
}

Outcome terminal_outcome(const Position& pos) {
  return owner(pos) == Player::Attacker ? Outcome::DefenderWins : Outcome::AttackerWins;
}

std::string position_string(const Plts& plts, const Position& pos) {
  return std::visit(
      overloaded{
          [&](const PairPos& p) {
            return "(" + plts.state_name(p.left) + ", " + plts.state_name(p.right) + ")";
          },
          [&](const DefTrans& p) {
            return std::string("answer ") + plts.action_name(p.action) + " from " +
                   plts.state_name(p.other) + " against " + side_name(p.attacked) + " " +
                   dist_string(plts, p.chosen);
          },
          [&](const DistPair& p) {
            return "(" + dist_string(plts, p.left) + ", " + dist_string(plts, p.right) + ")";
          },
          [&](const DefSubset& p) {
            return std::string("match ") + side_name(p.chosen_side) + std::string(" ") + set_string(plts, p.subset) +
                   " of mass " + p.rho.str() + " within " + dist_string(plts, p.other);
          },
          [&](const SetPair& p) {
            return "(" + set_string(plts, p.left) + ", " + set_string(plts, p.right) + ")";
          },
          [&](const DefPick& p) {
            return std::string("answer ") + side_name(p.chosen_side) + std::string(" ") + plts.state_name(p.state) +
                   " from " + set_string(plts, p.other);
          }},
      pos);
}

std::string move_string(const Plts& plts, const Move& move) {
  return std::visit(
      overloaded{
          [&](const ChooseTransition& m) {
            return side_name(m.side) + std::string(" -") + plts.action_name(m.action) + "-> " +
                   dist_string(plts, m.target);
          },
          [&](const RespondTransition& m) {
            return "-" + plts.action_name(m.action) + "-> " + dist_string(plts, m.target);
          },
          [&](const ChooseSubset& m) { return side_name(m.side) + std::string(" ") + set_string(plts, m.subset); },
          [&](const RespondSubset& m) { return set_string(plts, m.subset); },
          [&](const PickState& m) { return side_name(m.side) + std::string(" ") + plts.state_name(m.state); },
          [&](const RespondPick& m) { return plts.state_name(m.state); }},
      move);
}

bool Solver::attacker_wins(const Position& pos, std::size_t rounds) {
  if (std::holds_alternative<PairPos>(pos) && rounds == 0) return false;
  auto key = std::make_pair(pos, rounds);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  auto moves = legal_moves(plts_, pos);
  bool result;
  if (moves.empty()) {
    result = terminal_outcome(pos) == Outcome::AttackerWins;
  } else if (owner(pos) == Player::Attacker) {
    result = std::any_of(moves.begin(), moves.end(), [&](const Move& m) {
      return attacker_wins(apply_move(plts_, pos, m), ends_round(m) ? rounds - 1 : rounds);
    });
  } else {
    result = std::all_of(moves.begin(), moves.end(), [&](const Move& m) {
      return attacker_wins(apply_move(plts_, pos, m), ends_round(m) ? rounds - 1 : rounds);
    });
  }
  memo_.emplace(std::move(key), result);
  return result;
}

std::optional<Move> Solver::winning_move(const Position& pos, std::size_t rounds) {
  if (std::holds_alternative<PairPos>(pos) && rounds == 0) return std::nullopt;
  for (const auto& m : legal_moves(plts_, pos)) {
    if (attacker_wins(apply_move(plts_, pos, m), ends_round(m) ? rounds - 1 : rounds)) return m;
  }
  return std::nullopt;
}

std::optional<Move> Solver::surviving_move(const Position& pos, std::size_t rounds) {
  for (const auto& m : legal_moves(plts_, pos)) {
    if (!attacker_wins(apply_move(plts_, pos, m), ends_round(m) ? rounds - 1 : rounds)) return m;
  }
  return std::nullopt;
}

namespace {

void collect(Solver& solver, const Position& pos, std::size_t rounds, Player player, Strategy& out) {
  if (std::holds_alternative<PairPos>(pos) && rounds == 0) return;
  const Plts& plts = solver.plts();
  auto moves = legal_moves(plts, pos);
  if (moves.empty()) return;
  if (owner(pos) == player) {
    auto key = std::make_pair(pos, rounds);
    if (out.moves.count(key)) return;
    auto m = player == Player::Attacker ? solver.winning_move(pos, rounds) : solver.surviving_move(pos, rounds);
    if (!m) return;
    out.moves.emplace(key, *m);
    collect(solver, apply_move(plts, pos, *m), ends_round(*m) ? rounds - 1 : rounds, player, out);
  } else {
    for (const auto& m : moves) {
      collect(solver, apply_move(plts, pos, m), ends_round(m) ? rounds - 1 : rounds, player, out);
    }
  }
}

}  // namespace

WinResult attacker_wins_within(const Plts& plts, StateId s, StateId t, std::size_t n) {
  Solver solver(plts);
  Position root = PairPos{s, t};
  WinResult result;
  result.attacker_wins = solver.attacker_wins(root, n);
  result.strategy.player = result.attacker_wins ? Player::Attacker : Player::Defender;
  collect(solver, root, n, result.strategy.player, result.strategy);
  return result;
}

}  // namespace pbisim::game
