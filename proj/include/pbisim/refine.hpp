#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pbisim/partition.hpp"
#include "pbisim/plts.hpp"

namespace pbisim {

/// Distribution lumped onto the blocks of a partition, sorted by block.
using LumpedDist = std::vector<std::pair<std::size_t, Rational>>;

LumpedDist lump(const Dist& d, const Partition& p);

/// d1(E) == d2(E) for every block E of p.
bool dist_equiv(const Dist& d1, const Dist& d2, const Partition& p);

/// One round of the inductive characterisation: the returned partition
/// refines p and groups states whose transitions match up to p.
Partition refine_step(const Plts& plts, const Partition& p);

/// The approximant after n rounds, starting from the one-block partition.
Partition sim_n(const Plts& plts, std::size_t n);

/// sim_n for n = 0..max_n.
std::vector<Partition> sim_sequence(const Plts& plts, std::size_t max_n);

/// Probabilistic bisimilarity on a finite system (fixpoint of refine_step).
Partition bisim_finite(const Plts& plts);

/// Least n with sim_n == sim_{n+1}.
std::size_t stabilization_index(const Plts& plts);

}  // namespace pbisim
