#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <optional>
#include <vector>

#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"

namespace pbisim {

/// Where a state of a lifted system comes from.
struct LiftStateOrigin {
  enum class Kind { Original, Dist, Subset } kind = Kind::Original;
  StateId original = 0;              // Kind::Original
  Dist dist;                         // Kind::Dist
  std::vector<StateId> subset;       // Kind::Subset, sorted
};

struct LiftActionOrigin {
  enum class Kind { Original, Prob, Hash } kind = Kind::Original;
  ActionId original = 0;             // Kind::Original
  Rational rho;                      // Kind::Prob
};

struct LiftedPlts {
  Plts plts;
  std::vector<LiftStateOrigin> state_origin;
  std::vector<LiftActionOrigin> action_origin;
};

inline constexpr std::size_t kDefaultLiftCap = 1'000'000;

/// Sum over transitions of 2^|supp(d)|, an upper bound on the subset states.
std::size_t lift_size_estimate(const Plts& plts);

/// Nondeterministic encoding: original states, one state per distinct
/// target distribution, one per distinct nonempty subset of a support,
/// actions Σ ∪ W ∪ {#}. Throws SizeGuard if the estimate exceeds cap.
LiftedPlts lift_plts(const Plts& plts, std::size_t cap = kDefaultLiftCap);

/// The set W of values d(T), ascending.
std::vector<Rational> relevant_numbers(const std::vector<Distribution<HeadTarget>>& dists);
std::vector<Rational> relevant_numbers(const std::vector<Dist>& dists);

/// Nonempty subsets of a sorted support, in lexicographic order.
template <class T>
std::vector<std::vector<T>> nonempty_subsets(const std::vector<T>& support);

struct LiftedPpda {
  Ppda ppda;
  /// Fresh symbols (stack version) or fresh control states (control version).
  struct Fresh {
    bool is_dist = true;
    Distribution<HeadTarget> dist;
    std::vector<HeadTarget> subset;
  };
  std::map<std::uint32_t, Fresh> fresh;
  std::vector<LiftActionOrigin> action_origin;
  bool control_version = false;
};

/// Stack-symbol encoding: qX -a-> q0<d>, q0<d> -rho-> q0<T>, q0<T> -#-> p alpha.
LiftedPpda lift_ppda_stack(const Ppda& m, std::size_t cap = kDefaultLiftCap);

/// Control-state encoding: qX -a-> <d>X, <d>X -rho-> <T>X, <T>X -#-> p alpha.
LiftedPpda lift_ppda_state(const Ppda& m, std::size_t cap = kDefaultLiftCap);

std::string dist_state_name(const Plts& plts, const Dist& d);
std::string subset_state_name(const Plts& plts, const std::vector<StateId>& t);

template <class T>
std::vector<std::vector<T>> nonempty_subsets(const std::vector<T>& support) {
  std::vector<std::vector<T>> out;
  const std::size_t k = support.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<T> sub;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(support[i]);
    }
    out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pbisim
