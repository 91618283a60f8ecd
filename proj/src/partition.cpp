#include "pbisim/partition.hpp"

#include <unordered_map>

namespace pbisim {

Partition Partition::trivial(std::size_t num_states) {
  Partition p;
  p.block_of_.assign(num_states, 0);
  p.rebuild_blocks();
  return p;
}

Partition Partition::discrete(std::size_t num_states) {
  Partition p;
  p.block_of_.resize(num_states);
  for (std::size_t s = 0; s < num_states; ++s) p.block_of_[s] = s;
  p.rebuild_blocks();
  return p;
}

void Partition::rebuild_blocks() {
  // renumber so that block ids follow the smallest member
  std::unordered_map<std::size_t, std::size_t> renumber;
  blocks_.clear();
  for (std::size_t s = 0; s < block_of_.size(); ++s) {
    auto [it, fresh] = renumber.try_emplace(block_of_[s], blocks_.size());
    if (fresh) blocks_.emplace_back();
    block_of_[s] = it->second;
    blocks_[it->second].push_back(static_cast<StateId>(s));
  }
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_states() != num_states()) return false;
  for (const auto& block : blocks_) {
    for (StateId s : block) {
      if (coarser.block_of(s) != coarser.block_of(block.front())) return false;
    }
  }
  return true;
}

}  // namespace pbisim
