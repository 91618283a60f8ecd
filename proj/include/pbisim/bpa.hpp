#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pbisim/ppda.hpp"
#include "pbisim/rational.hpp"

namespace pbisim::bpa {

/// Norm of each stack symbol in macrosteps; nullopt for unnormed symbols.
/// The lifted system takes exactly three times as many steps.
struct NormTable {
  std::vector<std::optional<BigInt>> norm;
  /// For normed symbols: the rule and target that realise the norm.
  std::vector<std::optional<std::pair<std::size_t, HeadTarget>>> best;
};

NormTable norms(const Ppda& m);

/// Norm of a whole stack string, nullopt if some symbol is unnormed.
std::optional<BigInt> norm_of(const NormTable& t, const StackString& alpha);

struct WitnessStep {
  std::size_t rule;
  HeadTarget chosen;
  StackString stack_after;
};

/// Shortest emptying derivation of alpha, one entry per macrostep.
/// Throws InvalidInput for unnormed stacks and BudgetExceeded beyond max_steps.
std::vector<WitnessStep> witness(const Ppda& m, const NormTable& t, const StackString& alpha,
                                 std::size_t max_steps);

struct CongruenceReport {
  bool proviso_ok = false;
  std::vector<std::string> diagnostics;
  bool left = false, right = false, concat = false;
  /// left && right implies concat
  bool holds = true;
};

CongruenceReport congruence_check(const Ppda& m, const StackString& alpha, const StackString& alpha2,
                                  const StackString& beta, const StackString& beta2, std::size_t n);

}  // namespace pbisim::bpa
