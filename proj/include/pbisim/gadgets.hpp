#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"

namespace pbisim::gadgets {

enum class AfaOp { And, Or };

struct AfaTransition {
  AfaOp op = AfaOp::Or;
  std::size_t q1 = 0, q2 = 0;
};

/// Alternating automaton over a one-letter alphabet.
struct OneLetterAfa {
  std::vector<std::string> states;
  std::vector<AfaTransition> delta;  // total: one entry per state
  std::size_t initial = 0;
  std::vector<bool> accepting;

  void validate() const;
};

/// table[n][q] = Acc(q, n) for n <= max_n.
std::vector<std::vector<bool>> acc_table(const OneLetterAfa& afa, std::size_t max_n);
bool acc(const OneLetterAfa& afa, std::size_t q, std::size_t n);

/// s -a-> t1|t2 and s' -a-> t1'|t2'.
void and_gadget(Plts& l, StateId s, StateId s2, StateId t1, StateId t1p, StateId t2, StateId t2p, ActionId a);

struct OrGadget {
  StateId u12, u1p2p, u12p, u1p2;
};

/// Adds the four intermediate states (named with the given prefix) and the
/// transitions between them.
OrGadget or_gadget(Plts& l, StateId s, StateId s2, StateId t1, StateId t1p, StateId t2, StateId t2p,
                   ActionId a, const std::string& prefix);

struct Reduction {
  Ppda machine;
  Config left, right;
};

/// One-counter machine with p0 I Z ~ p0' I Z iff no n is accepted from the
/// initial state. The primed copy of q is named q_prime.
Reduction afa_to_poca(const OneLetterAfa& afa);

/// Pushdown reachability game: Player 1 wants a dead configuration.
struct ReachGame {
  Ppda machine;               // one action, no action partition needed
  std::vector<bool> player1;  // per control state
  Head initial;

  /// Throws InvalidInput if the rule shape assumptions fail.
  void validate() const;
};

enum class Winner { Player0, Player1 };
const char* winner_name(Winner w);

/// Visibly pushdown machine with p0 X0 ~ p0' X0 iff Player 0 wins.
Reduction game_to_pvpda(const ReachGame& g);

/// Attractor computation on the explicit configuration graph. Throws
/// BudgetExceeded if more than budget configurations are reachable and
/// InvalidInput if an empty-stack configuration is reachable.
Winner solve_reach_game_finite(const ReachGame& g, std::size_t budget);

}  // namespace pbisim::gadgets
