#include "pbisim/bpa.hpp"

#include "pbisim/error.hpp"
#include "pbisim/oracle.hpp"

namespace pbisim::bpa {

namespace {

void require_bpa(const Ppda& m) {
  if (!classify(m).bpa) throw InvalidInput("machine is not a BPA (it needs exactly one control state)");
}

}  // namespace

NormTable norms(const Ppda& m) {
  require_bpa(m);
  const std::size_t g = m.num_symbols();
  NormTable t;
  t.norm.assign(g, std::nullopt);
  t.best.assign(g, std::nullopt);
  std::vector<char> done(g, 0);
  // Knuth's generalisation of Dijkstra: fix the smallest value computable
  // from already fixed symbols.
  for (;;) {
    std::optional<BigInt> best_val;
    std::optional<SymbolId> best_sym;
    std::pair<std::size_t, HeadTarget> best_choice;
    for (std::size_t k = 0; k < m.rules().size(); ++k) {
      const Rule& r = m.rules()[k];
      if (done[r.head.symbol]) continue;
      for (const auto& [tgt, _] : r.target.entries()) {
        BigInt v = 1;
        bool ok = true;
        for (SymbolId y : tgt.push) {
          if (!done[y]) {
            ok = false;
            break;
          }
          v += *t.norm[y];
        }
        if (ok && (!best_val || v < *best_val)) {
          best_val = v;
          best_sym = r.head.symbol;
          best_choice = {k, tgt};
        }
      }
    }
    if (!best_sym) break;
    done[*best_sym] = 1;
    t.norm[*best_sym] = *best_val;
    t.best[*best_sym] = best_choice;
  }
  return t;
}

std::optional<BigInt> norm_of(const NormTable& t, const StackString& alpha) {
  BigInt sum = 0;
  for (SymbolId x : alpha) {
    if (!t.norm.at(x)) return std::nullopt;
    sum += *t.norm[x];
  }
  return sum;
}

std::vector<WitnessStep> witness(const Ppda& m, const NormTable& t, const StackString& alpha,
                                 std::size_t max_steps) {
  if (!norm_of(t, alpha)) throw InvalidInput("stack is unnormed");
  std::vector<WitnessStep> out;
  StackString stack = alpha;
  while (!stack.empty()) {
    if (out.size() >= max_steps) throw BudgetExceeded("witness derivation longer than the step budget", out.size());
    const auto& [rule, chosen] = *t.best[stack.front()];
    StackString next = chosen.push;
    next.insert(next.end(), stack.begin() + 1, stack.end());
    stack = std::move(next);
    out.push_back({rule, chosen, stack});
  }
  (void)m;
  return out;
}

CongruenceReport congruence_check(const Ppda& m, const StackString& alpha, const StackString& alpha2,
                                  const StackString& beta, const StackString& beta2, std::size_t n) {
  require_bpa(m);
  CongruenceReport rep;
  rep.proviso_ok = true;
  for (SymbolId x = 0; x < m.num_symbols(); ++x) {
    if (!m.enables({0, x})) {
      rep.proviso_ok = false;
      rep.diagnostics.push_back("symbol " + m.symbol_name(x) + " enables no action");
    }
  }
  if (!rep.proviso_ok) return rep;
  oracle::PpdaSystem sys(m);
  oracle::BoundedOracle oracle(sys);
  auto eq = [&](const StackString& a, const StackString& b) {
    return oracle.equiv(sys.node({0, a}), sys.node({0, b}), n);
  };
  StackString ab = alpha, ab2 = alpha2;
  ab.insert(ab.end(), beta.begin(), beta.end());
  ab2.insert(ab2.end(), beta2.begin(), beta2.end());
  rep.left = eq(alpha, alpha2);
  rep.right = eq(beta, beta2);
  rep.concat = eq(ab, ab2);
  rep.holds = !(rep.left && rep.right) || rep.concat;
  return rep;
}

}  // namespace pbisim::bpa
