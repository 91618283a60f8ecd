#include "support/generators.hpp"

#include <string>

namespace gen {

using namespace pbisim;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
Distribution<T> random_dist(Rng& rng, const std::vector<T>& items, long max_den) {
  // integer weights normalised by their sum
  std::vector<long> w(items.size());
  long total = 0;
  for (auto& x : w) {
    x = static_cast<long>(uniform(rng, 1, static_cast<std::size_t>(max_den)));
    total += x;
  }
  std::vector<std::pair<T, Rational>> entries;
  for (std::size_t i = 0; i < items.size(); ++i) entries.emplace_back(items[i], Rational(w[i], total));
  return Distribution<T>(std::move(entries));
}

template Distribution<StateId> random_dist(Rng&, const std::vector<StateId>&, long);
template Distribution<HeadTarget> random_dist(Rng&, const std::vector<HeadTarget>&, long);

Plts random_plts(Rng& rng, const PltsShape& shape) {
  Plts l;
  for (std::size_t s = 0; s < shape.states; ++s) l.add_state("s" + std::to_string(s));
  for (std::size_t a = 0; a < shape.actions; ++a) l.add_action(std::string(1, static_cast<char>('a' + a)));
  for (StateId s = 0; s < shape.states; ++s) {
    if (coin(rng, shape.dead)) continue;
    const std::size_t n = uniform(rng, 1, shape.max_out);
    for (std::size_t k = 0; k < n; ++k) {
      ActionId a = static_cast<ActionId>(uniform(rng, 0, shape.actions - 1));
      const std::size_t supp = coin(rng, shape.dirac) ? 1 : uniform(rng, 1, shape.max_support);
      std::vector<StateId> items;
      for (std::size_t i = 0; i < supp; ++i) items.push_back(static_cast<StateId>(uniform(rng, 0, shape.states - 1)));
      l.add_transition(s, a, random_dist(rng, items));
    }
  }
  return l;
}

namespace {

HeadTarget random_target(Rng& rng, std::size_t controls, std::size_t symbols, std::size_t len) {
  HeadTarget t{static_cast<ControlId>(uniform(rng, 0, controls - 1)), {}};
  for (std::size_t i = 0; i < len; ++i) t.push.push_back(static_cast<SymbolId>(uniform(rng, 0, symbols - 1)));
  return t;
}

}  // namespace

Ppda random_ppda(Rng& rng, const PpdaShape& shape) {
  Ppda m;
  for (std::size_t c = 0; c < shape.controls; ++c) m.add_control("p" + std::to_string(c));
  for (std::size_t s = 0; s < shape.symbols; ++s) m.add_symbol(std::string(1, static_cast<char>('A' + s)));
  for (std::size_t a = 0; a < shape.actions; ++a) m.add_action(std::string(1, static_cast<char>('a' + a)));
  for (ControlId c = 0; c < shape.controls; ++c) {
    for (SymbolId x = 0; x < shape.symbols; ++x) {
      if (coin(rng, shape.dead)) continue;
      const std::size_t n = uniform(rng, 1, shape.max_rules);
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<HeadTarget> items;
        const std::size_t supp = uniform(rng, 1, shape.max_support);
        for (std::size_t i = 0; i < supp; ++i) {
          items.push_back(random_target(rng, shape.controls, shape.symbols, uniform(rng, 0, 2)));
        }
        m.add_rule({{c, x}, static_cast<ActionId>(uniform(rng, 0, shape.actions - 1)), random_dist(rng, items)});
      }
    }
  }
  return m;
}

Ppda random_bpa(Rng& rng, std::size_t symbols, std::size_t actions) {
  PpdaShape shape;
  shape.controls = 1;
  shape.symbols = symbols;
  shape.actions = actions;
  return random_ppda(rng, shape);
}

Ppda random_poca(Rng& rng, std::size_t k, std::size_t actions) {
  Ppda m;
  for (std::size_t c = 0; c < k; ++c) m.add_control("p" + std::to_string(c));
  const SymbolId I = m.add_symbol("I");
  const SymbolId Z = m.add_symbol("Z");
  for (std::size_t a = 0; a < actions; ++a) m.add_action(std::string(1, static_cast<char>('a' + a)));
  for (ControlId c = 0; c < k; ++c) {
    for (SymbolId x : {I, Z}) {
      if (coin(rng, 0.2)) continue;
      const std::size_t n = uniform(rng, 1, 2);
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<HeadTarget> items;
        const std::size_t supp = uniform(rng, 1, 3);
        for (std::size_t i = 0; i < supp; ++i) {
          ControlId q = static_cast<ControlId>(uniform(rng, 0, k - 1));
          if (x == I) items.push_back({q, StackString(uniform(rng, 0, 2), I)});
          else items.push_back({q, coin(rng) ? StackString{Z} : StackString{I, Z}});
        }
        m.add_rule({{c, x}, static_cast<ActionId>(uniform(rng, 0, actions - 1)), random_dist(rng, items)});
      }
    }
  }
  return m;
}

Ppda random_vpda(Rng& rng, std::size_t controls, std::size_t symbols) {
  Ppda m;
  for (std::size_t c = 0; c < controls; ++c) m.add_control("p" + std::to_string(c));
  for (std::size_t s = 0; s < symbols; ++s) m.add_symbol(std::string(1, static_cast<char>('A' + s)));
  const ActionId r = m.add_action("r"), i = m.add_action("i"), c = m.add_action("c");
  m.set_action_class(r, ActionClass::Return);
  m.set_action_class(i, ActionClass::Internal);
  m.set_action_class(c, ActionClass::Call);
  for (ControlId p = 0; p < controls; ++p) {
    for (SymbolId x = 0; x < symbols; ++x) {
      if (coin(rng, 0.2)) continue;
      const std::size_t n = uniform(rng, 1, 2);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t len = uniform(rng, 0, 2);
        std::vector<HeadTarget> items;
        const std::size_t supp = uniform(rng, 1, 2);
        for (std::size_t j = 0; j < supp; ++j) items.push_back(random_target(rng, controls, symbols, len));
        m.add_rule({{p, x}, len == 0 ? r : (len == 1 ? i : c), random_dist(rng, items)});
      }
    }
  }
  return m;
}

gadgets::OneLetterAfa random_afa(Rng& rng, std::size_t states) {
  gadgets::OneLetterAfa afa;
  for (std::size_t q = 0; q < states; ++q) {
    afa.states.push_back("q" + std::to_string(q));
    afa.delta.push_back({coin(rng) ? gadgets::AfaOp::And : gadgets::AfaOp::Or, uniform(rng, 0, states - 1),
                         uniform(rng, 0, states - 1)});
    afa.accepting.push_back(coin(rng, 0.35));
  }
  afa.initial = 0;
  return afa;
}

gadgets::ReachGame random_game(Rng& rng, std::size_t controls, std::size_t symbols) {
  gadgets::ReachGame g;
  Ppda& m = g.machine;
  for (std::size_t c = 0; c < controls; ++c) m.add_control("p" + std::to_string(c));
  for (std::size_t s = 0; s < symbols; ++s) m.add_symbol(std::string(1, static_cast<char>('A' + s)));
  const ActionId a = m.add_action("a");
  auto one = [&](ControlId p, SymbolId x, StackString push) {
    m.add_rule({{p, x}, a, Distribution<HeadTarget>::dirac({static_cast<ControlId>(uniform(rng, 0, controls - 1)),
                                                            std::move(push)})});
  };
  // The bottom symbol A is never popped and only A can push, so stacks
  // stay within two symbols.
  for (ControlId p = 0; p < controls; ++p) {
    g.player1.push_back(coin(rng));
    for (SymbolId x = 0; x < symbols; ++x) {
      const std::size_t kind = uniform(rng, 0, 9);
      auto sym = [&] { return static_cast<SymbolId>(uniform(rng, x == 0 ? 0 : 1, symbols - 1)); };
      if (kind < 2) continue;  // dead head
      if (kind < 6) {
        SymbolId y1 = x == 0 ? 0 : static_cast<SymbolId>(uniform(rng, 1, symbols - 1));
        SymbolId y2 = x == 0 ? 0 : static_cast<SymbolId>(uniform(rng, 1, symbols - 1));
        one(p, x, {y1});
        one(p, x, {y2});
      } else if (kind < 8 || x == 0) {
        if (x == 0 && symbols > 1 && coin(rng)) one(p, x, {static_cast<SymbolId>(uniform(rng, 1, symbols - 1)), 0});
        else one(p, x, {x == 0 ? SymbolId{0} : sym()});
      } else {
        one(p, x, {});
      }
    }
  }
  g.initial = {0, 0};
  return g;
}

StackString random_stack(Rng& rng, std::size_t symbols, std::size_t max_len) {
  StackString s(uniform(rng, 0, max_len));
  for (auto& x : s) x = static_cast<SymbolId>(uniform(rng, 0, symbols - 1));
  return s;
}

}  // namespace gen
