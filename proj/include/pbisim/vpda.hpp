#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <mutex>
#include <set>
#include <utility>
#include <vector>

#include "pbisim/ppda.hpp"

namespace pbisim::vpda {

struct HeadPair {
  Head left, right;
  friend auto operator<=>(const HeadPair&, const HeadPair&) = default;
};

enum class OutcomeKind { Return, Internal, Call };

/// Pairs of head targets (control state plus pushed symbols) reached after
/// one protocol round. Their length must match the kind.
struct OutcomeSet {
  OutcomeKind kind = OutcomeKind::Return;
  std::set<std::pair<HeadTarget, HeadTarget>> pairs;
};

/// Attacker, restricted to action a, can make Defender either fail to
/// answer or end the round in a pair from out.
bool force_a(const Ppda& m, const HeadPair& hp, ActionId a, const OutcomeSet& out);

/// Subset of Q x Q stored as a bit vector indexed by p * |Q| + q.
using PairSet = std::vector<bool>;

struct ForceOptions {
  /// Search the intermediate set of the call rule explicitly, by increasing
  /// size, instead of using the largest admissible one.
  bool literal_call_rule = false;
  /// In literal mode, only consider pairs that can actually be reached when
  /// the pushed symbol is popped.
  bool prune_to_pop_results = true;
  /// Visit head pairs and targets in reverse order during the fixpoint.
  bool reverse_order = false;
  /// Control-state bound enforced in literal mode.
  std::size_t literal_max_controls = 5;
};

/// Lazily computed least relation between head pairs and target sets,
/// closed under the return, internal and call deduction rules.
class ForceTable {
 public:
  explicit ForceTable(const Ppda& m, ForceOptions options = {});

  bool force_long(const HeadPair& hp, const PairSet& target);
  /// {(p, q) | (pX, qY) forces target}.
  PairSet preimage(SymbolId x, SymbolId y, const PairSet& target);

  std::size_t num_targets() const { return targets_.size(); }
  std::size_t passes() const { return passes_; }
  /// Snapshot: every registered target with the head pairs forcing it.
  std::map<PairSet, std::set<HeadPair>> snapshot() const;

  PairSet empty_set() const { return PairSet(q_ * q_, false); }
  const Ppda& machine() const { return m_; }

 private:
  std::size_t ensure(const PairSet& target);
  void solve();
  bool derive(std::size_t head_pair, std::size_t target);
  HeadPair decode(std::size_t head_pair) const;
  std::size_t head_index(ControlId p, SymbolId x) const { return p * g_ + x; }
  std::size_t pair_index(std::size_t hl, std::size_t hr) const { return hl * h_ + hr; }
  void compute_pop_results();

  const Ppda& m_;
  ForceOptions options_;
  std::size_t q_, g_, h_;
  std::vector<PairSet> targets_;
  std::map<PairSet, std::size_t> target_index_;
  std::vector<std::vector<char>> win_;
  std::vector<std::set<ControlId>> pop_results_;
  bool registered_ = false;
  std::size_t passes_ = 0;
  std::mutex mutex_;
};

/// Pairs (p, q) with p alpha not bisimilar to q beta.
PairSet a_set(ForceTable& table, const StackString& alpha, const StackString& beta);

/// Decides c1 ~ c2 for a visibly pushdown machine.
bool vpda_decide(const Ppda& m, const Config& c1, const Config& c2, ForceOptions options = {});

}  // namespace pbisim::vpda
