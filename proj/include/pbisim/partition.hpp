#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "pbisim/plts.hpp"

namespace pbisim {

/// Equivalence classes over states 0..n-1. Blocks are numbered in order of
/// their smallest member and members are sorted, so equal partitions have
/// identical representations.
class Partition {
 public:
  Partition() = default;

  static Partition trivial(std::size_t num_states);
  static Partition discrete(std::size_t num_states);
  /// Blocks given by ordered labels per state; labels are renumbered.
  template <class Label>
  static Partition from_labels(const std::vector<Label>& labels);

  std::size_t num_states() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t block_of(StateId s) const { return block_of_.at(s); }
  const std::vector<std::vector<StateId>>& blocks() const { return blocks_; }
  bool same_block(StateId a, StateId b) const { return block_of(a) == block_of(b); }
  bool indexes(StateId s) const { return s < block_of_.size(); }

  /// True if every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.block_of_ == b.block_of_;
  }

 private:
  void rebuild_blocks();

  std::vector<std::size_t> block_of_;
  std::vector<std::vector<StateId>> blocks_;
};

template <class Label>
Partition Partition::from_labels(const std::vector<Label>& labels) {
  Partition p;
  p.block_of_.resize(labels.size());
  std::map<Label, std::size_t> ids;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    p.block_of_[s] = ids.try_emplace(labels[s], ids.size()).first->second;
  }
  p.rebuild_blocks();
  return p;
}

}  // namespace pbisim
