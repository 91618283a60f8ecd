#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "pbisim/error.hpp"
#include "pbisim/rational.hpp"

namespace pbisim {

/// Finite-support probability distribution with exact weights.
/// Entries are kept sorted by element and merged, so equal distributions
/// compare equal regardless of how they were written down.
template <class T>
class Distribution {
 public:
  using Entry = std::pair<T, Rational>;

  Distribution() = default;

  explicit Distribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    for (auto& e : entries_) {
      if (!e.second.is_positive()) {
        throw InvalidInput("distribution weight must be positive, got " + e.second.str());
      }
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    entries_ = std::move(merged);
    Rational total;
    for (const auto& e : entries_) total += e.second;
    if (entries_.empty()) throw InvalidInput("distribution has empty support");
    if (!total.is_one()) {
      throw InvalidInput("distribution weights sum to " + total.str() + ", not 1");
    }
  }

  static Distribution dirac(T x) {
    Distribution d;
    d.entries_.emplace_back(std::move(x), Rational(1));
    return d;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_dirac() const { return entries_.size() == 1; }

  Rational mass(const T& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& e, const T& v) { return e.first < v; });
    if (it != entries_.end() && it->first == x) return it->second;
    return Rational();
  }

  template <class Pred>
  Rational mass_if(Pred pred) const {
    Rational total;
    for (const auto& e : entries_) {
      if (pred(e.first)) total += e.second;
    }
    return total;
  }

  /// Mass of a set given as a sorted vector.
  Rational mass_of(const std::vector<T>& set) const {
    return mass_if([&](const T& x) { return std::binary_search(set.begin(), set.end(), x); });
  }

  std::vector<T> support() const {
    std::vector<T> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

  /// Image under f; weights of colliding images are added.
  template <class F>
  auto map(F f) const -> Distribution<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<std::pair<U, Rational>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.emplace_back(f(e.first), e.second);
    return Distribution<U>(std::move(out));
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;
  friend auto operator<=>(const Distribution& a, const Distribution& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace pbisim
