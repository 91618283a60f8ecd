#include <doctest.h>

#include "pbisim/bpa.hpp"
#include "pbisim/error.hpp"
#include "pbisim/format.hpp"
#include "pbisim/oracle.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace pbisim;
using namespace pbisim::bpa;

Ppda bpa_part();

TEST_CASE("norms of the example BPA") {
  Ppda m = bpa_part();
  NormTable t = norms(m);
  CHECK(*t.norm[*m.find_symbol("X")] == 1);
  CHECK(*t.norm[*m.find_symbol("X'")] == 1);
  CHECK(*t.norm[*m.find_symbol("Y")] == 3);
  CHECK(*norm_of(t, {*m.find_symbol("Y"), *m.find_symbol("X")}) == 4);
}

TEST_CASE("unnormed and trivial symbols") {
  Ppda grow = format::parse_ppda("ppda\ncontrols: r\nstack: X\nr X -a-> r X X\n");
  CHECK_FALSE(norms(grow).norm[0].has_value());
  Ppda pop = format::parse_ppda("ppda\ncontrols: r\nstack: X\nr X -a-> r\n");
  CHECK(*norms(pop).norm[0] == 1);
  Ppda two = format::parse_ppda("ppda\ncontrols: p q\nstack: X\np X -a-> p\n");
  CHECK_THROWS_AS(norms(two), InvalidInput);
}

TEST_CASE("norm fixpoint, witnesses and exhaustive search agree") {
  gen::Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    Ppda m = gen::random_bpa(rng, gen::uniform(rng, 1, 4), 2);
    NormTable t = norms(m);
    auto bfs = ref::norms_bfs(m, 12);
    for (SymbolId x = 0; x < m.num_symbols(); ++x) {
      if (t.norm[x] && *t.norm[x] <= 6) REQUIRE(bfs[x] == t.norm[x]->get_ui());
      if (bfs[x]) REQUIRE(t.norm[x].has_value());
      if (!t.norm[x]) continue;
      // re-substitution: no rule gives a smaller value, the chosen one is exact
      BigInt best = -1;
      for (std::size_t i : m.rules_for({0, x})) {
        for (const auto& [tg, _] : m.rules()[i].target.entries()) {
          auto n = norm_of(t, tg.push);
          if (n && (best < 0 || 1 + *n < best)) best = 1 + *n;
        }
      }
      REQUIRE(best == *t.norm[x]);
      auto w = witness(m, t, {x}, 10000);
      REQUIRE(BigInt(static_cast<unsigned long>(w.size())) == *t.norm[x]);
      REQUIRE(w.back().stack_after.empty());
      StackString cur{x};
      for (const auto& st : w) {
        const Rule& r = m.rules()[st.rule];
        REQUIRE(r.head.symbol == cur.front());
        REQUIRE(r.target.mass_if([&](const HeadTarget& h) { return h == st.chosen; }).is_positive());
        StackString next = st.chosen.push;
        next.insert(next.end(), cur.begin() + 1, cur.end());
        REQUIRE(next == st.stack_after);
        cur = next;
      }
    }
  }
}

TEST_CASE("congruence implication on the example and random instances") {
  Ppda m = bpa_part();
  const SymbolId X = *m.find_symbol("X"), Xp = *m.find_symbol("X'"), Y = *m.find_symbol("Y");
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const StackString& beta : {StackString{}, StackString{X}, StackString{Y, Xp}}) {
      auto r = congruence_check(m, {X}, {Xp}, beta, beta, n);
      REQUIRE(r.proviso_ok);
      CHECK(r.holds);
      if (r.left) CHECK(r.concat);
    }
  }
  gen::Rng rng(72);
  int run = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Ppda r = gen::random_bpa(rng, gen::uniform(rng, 1, 3), 2);
    const std::size_t g = r.num_symbols();
    auto rep = congruence_check(r, gen::random_stack(rng, g, 2), gen::random_stack(rng, g, 2),
                                gen::random_stack(rng, g, 2), gen::random_stack(rng, g, 2), gen::uniform(rng, 0, 3));
    if (!rep.proviso_ok) {
      REQUIRE_FALSE(rep.diagnostics.empty());
      continue;
    }
    ++run;
    REQUIRE(rep.holds);
  }
  CHECK(run > 50);
}
