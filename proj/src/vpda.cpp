#include "pbisim/vpda.hpp"

#include <algorithm>
#include <functional>

#include "pbisim/error.hpp"

namespace pbisim::vpda {

namespace {

using Pred = std::function<bool(const HeadTarget&, const HeadTarget&)>;

// Steps 2 and 3 of the round once both distributions are fixed.
bool attacker_wins_dists(const Distribution<HeadTarget>& dl, const Distribution<HeadTarget>& dr,
                         const Pred& pred) {
  const auto& el = dl.entries();
  const auto& er = dr.entries();
  const std::size_t nl = el.size(), nr = er.size();
  std::vector<std::vector<char>> good(nl, std::vector<char>(nr));
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = 0; j < nr; ++j) good[i][j] = pred(el[i].first, er[j].first);
  }
  auto mass = [](const auto& entries, std::size_t mask) {
    Rational r;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (mask & (std::size_t{1} << i)) r += entries[i].second;
    }
    return r;
  };
  // Attacker picks an element of one set; Defender answers from the other.
  auto sets_win = [&](std::size_t ml, std::size_t mr) {
    for (std::size_t i = 0; i < nl; ++i) {
      if (!(ml & (std::size_t{1} << i))) continue;
      bool all = true;
      for (std::size_t j = 0; j < nr && all; ++j) {
        if (mr & (std::size_t{1} << j)) all = good[i][j];
      }
      if (all) return true;
    }
    for (std::size_t j = 0; j < nr; ++j) {
      if (!(mr & (std::size_t{1} << j))) continue;
      bool all = true;
      for (std::size_t i = 0; i < nl && all; ++i) {
        if (ml & (std::size_t{1} << i)) all = good[i][j];
      }
      if (all) return true;
    }
    return false;
  };
  const std::size_t full_l = std::size_t{1} << nl, full_r = std::size_t{1} << nr;
  for (std::size_t tl = 1; tl < full_l; ++tl) {
    Rational rho = mass(el, tl);
    bool all = true;
    for (std::size_t tr = 1; tr < full_r && all; ++tr) {
      if (mass(er, tr) >= rho) all = sets_win(tl, tr);
    }
    if (all) return true;
  }
  for (std::size_t tr = 1; tr < full_r; ++tr) {
    Rational rho = mass(er, tr);
    bool all = true;
    for (std::size_t tl = 1; tl < full_l && all; ++tl) {
      if (mass(el, tl) >= rho) all = sets_win(tl, tr);
    }
    if (all) return true;
  }
  return false;
}

bool force_pred(const Ppda& m, const HeadPair& hp, ActionId a, const Pred& pred) {
  for (bool attack_left : {true, false}) {
    Head attacked = attack_left ? hp.left : hp.right;
    Head defending = attack_left ? hp.right : hp.left;
    for (std::size_t i : m.rules_for(attacked)) {
      const Rule& r = m.rules()[i];
      if (r.action != a) continue;
      bool wins = true;
      for (std::size_t j : m.rules_for(defending)) {
        const Rule& resp = m.rules()[j];
        if (resp.action != a) continue;
        const auto& dl = attack_left ? r.target : resp.target;
        const auto& dr = attack_left ? resp.target : r.target;
        if (!attacker_wins_dists(dl, dr, pred)) {
          wins = false;
          break;
        }
      }
      if (wins) return true;  // includes the case of no answer at all
    }
  }
  return false;
}

OutcomeKind kind_of(ActionClass c) {
  switch (c) {
    case ActionClass::Return: return OutcomeKind::Return;
    case ActionClass::Internal: return OutcomeKind::Internal;
    case ActionClass::Call: return OutcomeKind::Call;
  }
  return OutcomeKind::Return;
}

void require_vpda(const Ppda& m) {
  if (!classify(m, true).vpda) throw InvalidInput("machine is not visibly pushdown");
}

}  // namespace

bool force_a(const Ppda& m, const HeadPair& hp, ActionId a, const OutcomeSet& out) {
  require_vpda(m);
  ActionClass c = *m.action_class(a);
  if (kind_of(c) != out.kind) {
    throw InvalidInput(std::string("outcome set kind does not match ") + action_class_name(c) + " action " +
                       m.action_name(a));
  }
  const std::size_t want = c == ActionClass::Return ? 0 : (c == ActionClass::Internal ? 1 : 2);
  for (const auto& [x, y] : out.pairs) {
    if (x.push.size() != want || y.push.size() != want) {
      throw InvalidInput("outcome pair has the wrong stack length for its kind");
    }
  }
  return force_pred(m, hp, a, [&](const HeadTarget& x, const HeadTarget& y) {
    return out.pairs.count({x, y}) > 0;
  });
}

ForceTable::ForceTable(const Ppda& m, ForceOptions options)
    : m_(m), options_(options), q_(m.num_controls()), g_(m.num_symbols()), h_(q_ * g_) {
  require_vpda(m);
  if (options_.literal_call_rule && q_ > options_.literal_max_controls) {
    throw SizeGuard("explicit call-rule search supports at most " +
                    std::to_string(options_.literal_max_controls) + " control states, got " +
                    std::to_string(q_));
  }
  compute_pop_results();
}

void ForceTable::compute_pop_results() {
  pop_results_.assign(h_, {});
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : m_.rules()) {
      auto& dst = pop_results_[head_index(r.head.control, r.head.symbol)];
      std::size_t before = dst.size();
      for (const auto& [t, _] : r.target.entries()) {
        if (t.push.empty()) {
          dst.insert(t.control);
        } else if (t.push.size() == 1) {
          const auto& src = pop_results_[head_index(t.control, t.push[0])];
          dst.insert(src.begin(), src.end());
        } else {
          for (ControlId mid : std::set<ControlId>(pop_results_[head_index(t.control, t.push[0])])) {
            const auto& src = pop_results_[head_index(mid, t.push[1])];
            dst.insert(src.begin(), src.end());
          }
        }
      }
      changed = changed || dst.size() != before;
    }
  }
}

std::size_t ForceTable::ensure(const PairSet& target) {
  if (target.size() != q_ * q_) throw InvalidInput("target set has the wrong size");
  if (auto it = target_index_.find(target); it != target_index_.end()) return it->second;
  std::size_t id = targets_.size();
  targets_.push_back(target);
  target_index_.emplace(target, id);
  win_.emplace_back(h_ * h_, 0);
  registered_ = true;
  return id;
}

HeadPair ForceTable::decode(std::size_t hp) const {
  const std::size_t l = hp / h_, r = hp % h_;
  return HeadPair{Head{static_cast<ControlId>(l / g_), static_cast<SymbolId>(l % g_)},
                  Head{static_cast<ControlId>(r / g_), static_cast<SymbolId>(r % g_)}};
}

bool ForceTable::derive(std::size_t hp, std::size_t ti) {
  const HeadPair pair = decode(hp);
  for (ActionId a = 0; a < m_.num_actions(); ++a) {
    ActionClass c = *m_.action_class(a);
    Pred pred;
    if (c == ActionClass::Return) {
      pred = [&](const HeadTarget& x, const HeadTarget& y) {
        return static_cast<bool>(targets_[ti][x.control * q_ + y.control]);
      };
    } else if (c == ActionClass::Internal) {
      pred = [&](const HeadTarget& x, const HeadTarget& y) {
        return win_[ti][pair_index(head_index(x.control, x.push[0]), head_index(y.control, y.push[0]))] != 0;
      };
    } else {
      pred = [&](const HeadTarget& x, const HeadTarget& y) {
        // pairs after popping the second symbols from which target is forced
        PairSet after(q_ * q_, false);
        for (ControlId p = 0; p < q_; ++p) {
          for (ControlId q = 0; q < q_; ++q) {
            after[p * q_ + q] =
                win_[ti][pair_index(head_index(p, x.push[1]), head_index(q, y.push[1]))] != 0;
          }
        }
        const std::size_t first = pair_index(head_index(x.control, x.push[0]), head_index(y.control, y.push[0]));
        if (!options_.literal_call_rule) return win_[ensure(after)][first] != 0;
        std::vector<std::size_t> candidates;
        const auto& rl = pop_results_[head_index(x.control, x.push[0])];
        const auto& rr = pop_results_[head_index(y.control, y.push[0])];
        for (std::size_t k = 0; k < after.size(); ++k) {
          if (!after[k]) continue;
          if (options_.prune_to_pop_results &&
              (!rl.count(static_cast<ControlId>(k / q_)) || !rr.count(static_cast<ControlId>(k % q_)))) {
            continue;
          }
          candidates.push_back(k);
        }
        // subsets by increasing cardinality
        const std::size_t n = candidates.size();
        std::vector<std::size_t> masks(std::size_t{1} << n);
        for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
        std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
          return __builtin_popcountll(a) < __builtin_popcountll(b);
        });
        for (std::size_t mask : masks) {
          PairSet mid(q_ * q_, false);
          for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) mid[candidates[i]] = true;
          }
          if (win_[ensure(mid)][first]) return true;
        }
        return false;
      };
    }
    if (force_pred(m_, pair, a, pred)) return true;
  }
  return false;
}

void ForceTable::solve() {
  bool changed = true;
  while (changed) {
    changed = false;
    registered_ = false;
    ++passes_;
    for (std::size_t step = 0; step < targets_.size(); ++step) {
      // targets registered during the pass are picked up by later passes
      std::size_t ti = options_.reverse_order ? targets_.size() - 1 - step : step;
      for (std::size_t k = 0; k < h_ * h_; ++k) {
        std::size_t hp = options_.reverse_order ? h_ * h_ - 1 - k : k;
        if (win_[ti][hp]) continue;
        if (derive(hp, ti)) {
          win_[ti][hp] = 1;
          changed = true;
        }
      }
    }
    changed = changed || registered_;
  }
}

bool ForceTable::force_long(const HeadPair& hp, const PairSet& target) {
  std::lock_guard lock(mutex_);
  std::size_t ti = ensure(target);
  solve();
  return win_[ti][pair_index(head_index(hp.left.control, hp.left.symbol),
                             head_index(hp.right.control, hp.right.symbol))] != 0;
}

PairSet ForceTable::preimage(SymbolId x, SymbolId y, const PairSet& target) {
  std::lock_guard lock(mutex_);
  std::size_t ti = ensure(target);
  solve();
  PairSet out(q_ * q_, false);
  for (ControlId p = 0; p < q_; ++p) {
    for (ControlId q = 0; q < q_; ++q) {
      out[p * q_ + q] = win_[ti][pair_index(head_index(p, x), head_index(q, y))] != 0;
    }
  }
  return out;
}

std::map<PairSet, std::set<HeadPair>> ForceTable::snapshot() const {
  std::map<PairSet, std::set<HeadPair>> out;
  for (std::size_t ti = 0; ti < targets_.size(); ++ti) {
    auto& dst = out[targets_[ti]];
    for (std::size_t hp = 0; hp < h_ * h_; ++hp) {
      if (!win_[ti][hp]) continue;
      dst.insert(decode(hp));
    }
  }
  return out;
}

PairSet a_set(ForceTable& table, const StackString& alpha, const StackString& beta) {
  const Ppda& m = table.machine();
  const std::size_t q = m.num_controls();
  const std::size_t la = alpha.size(), lb = beta.size();
  const std::size_t common = std::min(la, lb);
  // base: one side empty, the other still has a head
  PairSet a(q * q, false);
  if (la != lb) {
    for (ControlId p = 0; p < q; ++p) {
      for (ControlId r = 0; r < q; ++r) {
        a[p * q + r] = la < lb ? m.enables({r, beta[common]}) : m.enables({p, alpha[common]});
      }
    }
  }
  for (std::size_t i = common; i-- > 0;) a = table.preimage(alpha[i], beta[i], a);
  return a;
}

bool vpda_decide(const Ppda& m, const Config& c1, const Config& c2, ForceOptions options) {
  ForceTable table(m, options);
  PairSet a = a_set(table, c1.stack, c2.stack);
  return !a[c1.control * m.num_controls() + c2.control];
}

}  // namespace pbisim::vpda
