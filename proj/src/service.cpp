#include "pbisim/service.hpp"

#include <limits>

#include "pbisim/error.hpp"
#include "pbisim/format.hpp"

namespace pbisim::service {

using namespace game;

namespace {

json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json state_json(const Plts& plts, StateId s) { return {{"id", s}, {"name", plts.state_name(s)}}; }

json states_json(const Plts& plts, const std::vector<StateId>& v) {
  json out = json::array();
  for (StateId s : v) out.push_back(state_json(plts, s));
  return out;
}

json dist_json(const Plts& plts, const Dist& d) {
  json out = json::array();
  for (const auto& [s, p] : d.entries()) {
    out.push_back({{"state", state_json(plts, s)}, {"p", rational_json(p)}});
  }
  return out;
}

json action_json(const Plts& plts, ActionId a) { return {{"id", a}, {"name", plts.action_name(a)}}; }

Response error(int status, const std::string& msg) { return {status, {{"error", msg}}}; }

}  // namespace

SessionSetup make_setup(const std::string& source, const std::string& left, const std::string& right,
                        Player human, std::size_t horizon, std::string model) {
  SessionSetup setup;
  setup.model = std::move(model);
  setup.horizon = horizon;
  setup.human = human;
  auto kind = format::detect_kind(source);
  if (kind == format::FileKind::Plts) {
    auto plts = std::make_shared<Plts>(format::parse_plts(source));
    auto l = plts->find_state(left), r = plts->find_state(right);
    if (!l) throw InvalidInput("unknown state '" + left + "'");
    if (!r) throw InvalidInput("unknown state '" + right + "'");
    setup.plts = plts;
    setup.left = *l;
    setup.right = *r;
  } else if (kind == format::FileKind::Ppda) {
    Ppda m = format::parse_ppda(source);
    Config c1 = format::expand(format::parse_config(m, left), 10000);
    Config c2 = format::expand(format::parse_config(m, right), 10000);
    // a play of h rounds never leaves the depth-h neighbourhood
    Fragment f = reachable_fragment(m, {c1, c2}, horizon, 100000);
    setup.plts = std::make_shared<Plts>(std::move(f.plts));
    setup.left = f.index.at(c1);
    setup.right = f.index.at(c2);
  } else {
    throw InvalidInput("sessions need a plts or ppda model");
  }
  return setup;
}

json rational_json(const Rational& r) { return {{"num", big_json(r.numerator())}, {"den", big_json(r.denominator())}}; }

json position_json(const Plts& plts, const Position& pos) {
  json j = std::visit(
      [&](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PairPos>) {
          std::vector<std::string> el, er;
          for (ActionId a : plts.enabled(p.left)) el.push_back(plts.action_name(a));
          for (ActionId a : plts.enabled(p.right)) er.push_back(plts.action_name(a));
          return {{"kind", "pair"}, {"left", state_json(plts, p.left)}, {"right", state_json(plts, p.right)},
                  {"left_enabled", el}, {"right_enabled", er}};
        } else if constexpr (std::is_same_v<T, DefTrans>) {
          return {{"kind", "defender_transition"}, {"attacked", side_name(p.attacked)},
                  {"action", action_json(plts, p.action)}, {"chosen", dist_json(plts, p.chosen)},
                  {"other", state_json(plts, p.other)}};
        } else if constexpr (std::is_same_v<T, DistPair>) {
          return {{"kind", "distributions"}, {"left", dist_json(plts, p.left)}, {"right", dist_json(plts, p.right)}};
        } else if constexpr (std::is_same_v<T, DefSubset>) {
          return {{"kind", "defender_subset"}, {"chosen_side", side_name(p.chosen_side)},
                  {"subset", states_json(plts, p.subset)}, {"other", dist_json(plts, p.other)},
                  {"rho", rational_json(p.rho)}};
        } else if constexpr (std::is_same_v<T, SetPair>) {
          return {{"kind", "sets"}, {"left", states_json(plts, p.left)}, {"right", states_json(plts, p.right)}};
        } else {
          return {{"kind", "defender_pick"}, {"chosen_side", side_name(p.chosen_side)},
                  {"state", state_json(plts, p.state)}, {"other", states_json(plts, p.other)}};
        }
      },
      pos);
  j["owner"] = player_name(owner(pos));
  j["text"] = position_string(plts, pos);
  return j;
}

json move_json(const Plts& plts, const Move& move) {
  json j = std::visit(
      [&](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ChooseTransition>) {
          return {{"kind", "choose_transition"}, {"side", side_name(m.side)}, {"action", action_json(plts, m.action)},
                  {"target", dist_json(plts, m.target)}};
        } else if constexpr (std::is_same_v<T, RespondTransition>) {
          return {{"kind", "respond_transition"}, {"action", action_json(plts, m.action)},
                  {"target", dist_json(plts, m.target)}};
        } else if constexpr (std::is_same_v<T, ChooseSubset>) {
          return {{"kind", "choose_subset"}, {"side", side_name(m.side)}, {"subset", states_json(plts, m.subset)}};
        } else if constexpr (std::is_same_v<T, RespondSubset>) {
          return {{"kind", "respond_subset"}, {"subset", states_json(plts, m.subset)}};
        } else if constexpr (std::is_same_v<T, PickState>) {
          return {{"kind", "pick_state"}, {"side", side_name(m.side)}, {"state", state_json(plts, m.state)}};
        } else {
          return {{"kind", "respond_pick"}, {"state", state_json(plts, m.state)}};
        }
      },
      move);
  j["text"] = move_string(plts, move);
  return j;
}

json view_json(const SessionView& v) {
  const Plts& plts = *v.plts;
  json legal = json::array();
  for (std::size_t i = 0; i < v.legal.size(); ++i) {
    json m = move_json(plts, v.legal[i]);
    m["index"] = i;
    legal.push_back(std::move(m));
  }
  json history = json::array();
  for (const auto& h : v.history) {
    history.push_back({{"actor", player_name(h.actor)}, {"round", h.round}, {"move", move_json(plts, h.move)}});
  }
  return {{"id", v.id},
          {"model", v.model},
          {"position", position_json(plts, v.position)},
          {"to_move", player_name(v.to_move)},
          {"human", player_name(v.human)},
          {"legal", legal},
          {"history", history},
          {"outcome", outcome_name(v.outcome)},
          {"rounds_completed", v.rounds_completed},
          {"horizon", v.horizon}};
}

Move move_from_json(const SessionView& v, const json& j) {
  if (!j.is_object()) throw IllegalMove("move must be a JSON object");
  if (j.contains("index")) {
    if (!j["index"].is_number_unsigned()) throw IllegalMove("index must be a non-negative integer");
    std::size_t i = j["index"].get<std::size_t>();
    if (i >= v.legal.size()) throw IllegalMove("move index " + std::to_string(i) + " out of range");
    return v.legal[i];
  }
  // compare against the legal moves in their JSON form, ignoring display text
  auto strip = [](json m) {
    m.erase("text");
    m.erase("index");
    return m;
  };
  json want = strip(j);
  for (const Move& m : v.legal) {
    if (strip(move_json(*v.plts, m)) == want) return m;
  }
  // display text alone also identifies a move
  if (j.contains("text")) {
    for (const Move& m : v.legal) {
      if (move_string(*v.plts, m) == j["text"]) return m;
    }
  }
  throw IllegalMove("move is not legal in the current position");
}

void SessionService::add_model(Model m) {
  std::lock_guard lock(mutex_);
  std::string name = m.name;
  models_[name] = std::move(m);
}

Response SessionService::create(const json& req) {
  std::string source, model_name;
  {
    std::lock_guard lock(mutex_);
    if (req.contains("model")) {
      model_name = req["model"].get<std::string>();
      auto it = models_.find(model_name);
      if (it == models_.end()) return error(404, "unknown model '" + model_name + "'");
      source = it->second.source;
    } else if (req.contains("source")) {
      source = req["source"].get<std::string>();
      model_name = "inline";
    } else {
      return error(400, "request needs 'model' or 'source'");
    }
  }
  if (!req.contains("left") || !req.contains("right")) return error(400, "request needs 'left' and 'right'");
  const std::string left = req["left"].get<std::string>(), right = req["right"].get<std::string>();
  const std::size_t horizon = req.value("horizon", std::size_t{3});
  const std::string side = req.value("side", std::string("defender"));
  Player human;
  if (side == "attacker") human = Player::Attacker;
  else if (side == "defender") human = Player::Defender;
  else return error(400, "side must be 'attacker' or 'defender'");
  SessionSetup setup = make_setup(source, left, right, human, horizon, model_name);

  std::string id = store_.create(std::move(setup));
  return {201, view_json(store_.view(id))};
}

Response SessionService::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    auto parse_body = [&]() { return body.empty() ? json::object() : json::parse(body); };
    if (path == "/models" && method == "GET") {
      std::lock_guard lock(mutex_);
      json names = json::array();
      for (const auto& [name, _] : models_) names.push_back(name);
      return {200, {{"models", names}}};
    }
    if (path == "/session") {
      if (method != "POST") return error(405, "use POST to create a session");
      return create(parse_body());
    }
    const std::string prefix = "/session/";
    if (path.rfind(prefix, 0) == 0) {
      std::string rest = path.substr(prefix.size());
      const std::string suffix = "/move";
      if (rest.size() > suffix.size() && rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
        if (method != "POST") return error(405, "use POST to play a move");
        std::string id = rest.substr(0, rest.size() - suffix.size());
        SessionView v = store_.view(id);
        Move m = move_from_json(v, parse_body());
        return {200, view_json(store_.play(id, m))};
      }
      if (rest.find('/') == std::string::npos) {
        if (method != "GET") return error(405, "use GET to read a session");
        return {200, view_json(store_.view(rest))};
      }
    }
    return error(404, "no such endpoint");
  } catch (const NotFound& e) {
    return error(404, e.what());
  } catch (const IllegalMove& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("bad JSON: ") + e.what());
  } catch (const ParseError& e) {
    return error(400, e.what());
  } catch (const InvalidInput& e) {
    return error(400, e.what());
  } catch (const SizeGuard& e) {
    return error(413, e.what());
  } catch (const BudgetExceeded& e) {
    return error(413, e.what());
  }
}

}  // namespace pbisim::service
