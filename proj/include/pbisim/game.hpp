#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pbisim/plts.hpp"

namespace pbisim::game {

enum class Side { Left, Right };
enum class Player { Attacker, Defender };

inline Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
const char* side_name(Side s);
const char* player_name(Player p);

// Positions of one protocol round, in order of appearance.

struct PairPos {
  StateId left = 0, right = 0;
  friend auto operator<=>(const PairPos&, const PairPos&) = default;
};

/// Attacker has played `chosen` from the `attacked` side; Defender answers from `other`.
struct DefTrans {
  Side attacked = Side::Left;
  ActionId action = 0;
  Dist chosen;
  StateId other = 0;
  friend auto operator<=>(const DefTrans&, const DefTrans&) = default;
};

struct DistPair {
  Dist left, right;
  friend auto operator<=>(const DistPair&, const DistPair&) = default;
};

/// Attacker picked `subset` of the `chosen_side` distribution, of mass rho.
struct DefSubset {
  Side chosen_side = Side::Left;
  std::vector<StateId> subset;
  Dist other;
  Rational rho;
  friend auto operator<=>(const DefSubset&, const DefSubset&) = default;
};

struct SetPair {
  std::vector<StateId> left, right;
  friend auto operator<=>(const SetPair&, const SetPair&) = default;
};

struct DefPick {
  Side chosen_side = Side::Left;
  StateId state = 0;
  std::vector<StateId> other;
  friend auto operator<=>(const DefPick&, const DefPick&) = default;
};

using Position = std::variant<PairPos, DefTrans, DistPair, DefSubset, SetPair, DefPick>;

struct ChooseTransition {
  Side side = Side::Left;
  ActionId action = 0;
  Dist target;
  friend auto operator<=>(const ChooseTransition&, const ChooseTransition&) = default;
};
struct RespondTransition {
  ActionId action = 0;
  Dist target;
  friend auto operator<=>(const RespondTransition&, const RespondTransition&) = default;
};
struct ChooseSubset {
  Side side = Side::Left;
  std::vector<StateId> subset;
  friend auto operator<=>(const ChooseSubset&, const ChooseSubset&) = default;
};
struct RespondSubset {
  std::vector<StateId> subset;
  friend auto operator<=>(const RespondSubset&, const RespondSubset&) = default;
};
struct PickState {
  Side side = Side::Left;
  StateId state = 0;
  friend auto operator<=>(const PickState&, const PickState&) = default;
};
struct RespondPick {
  StateId state = 0;
  friend auto operator<=>(const RespondPick&, const RespondPick&) = default;
};

using Move = std::variant<ChooseTransition, RespondTransition, ChooseSubset, RespondSubset, PickState,
                          RespondPick>;

/// Who moves in the position.
Player owner(const Position& pos);
Player actor(const Move& move);

/// All legal moves in canonical order (side, action, target; subsets
/// lexicographically). An empty list means the position is terminal.
std::vector<Move> legal_moves(const Plts& plts, const Position& pos);

/// Throws IllegalMove unless move is in legal_moves(plts, pos).
Position apply_move(const Plts& plts, const Position& pos, const Move& move);

enum class Outcome { Ongoing, AttackerWins, DefenderWins };
const char* outcome_name(Outcome o);

/// Outcome of a position with no legal moves: two dead states favour
/// Defender, a Defender without a matching transition loses.
Outcome terminal_outcome(const Position& pos);

std::string position_string(const Plts& plts, const Position& pos);
std::string move_string(const Plts& plts, const Move& move);

/// Backward induction on the game tree; `rounds` counts the protocol rounds
/// still available, the current one included.
class Solver {
 public:
  explicit Solver(const Plts& plts) : plts_(plts) {}

  bool attacker_wins(const Position& pos, std::size_t rounds);
  /// First Attacker move (canonical order) that wins within rounds.
  std::optional<Move> winning_move(const Position& pos, std::size_t rounds);
  /// First Defender move after which Attacker cannot win within rounds.
  std::optional<Move> surviving_move(const Position& pos, std::size_t rounds);

  const Plts& plts() const { return plts_; }

 private:
  const Plts& plts_;
  std::map<std::pair<Position, std::size_t>, bool> memo_;
};

/// Moves keyed by (position, rounds remaining).
struct Strategy {
  Player player = Player::Attacker;
  std::map<std::pair<Position, std::size_t>, Move> moves;
};

struct WinResult {
  bool attacker_wins = false;
  Strategy strategy;  // Attacker's if attacker_wins, otherwise Defender's
};

/// Attacker can force a win from (s, t) within n protocol rounds, i.e. s and
/// t are not n-equivalent. The returned strategy witnesses the answer.
WinResult attacker_wins_within(const Plts& plts, StateId s, StateId t, std::size_t n);

}  // namespace pbisim::game
