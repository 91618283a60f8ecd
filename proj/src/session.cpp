#include "pbisim/session.hpp"

#include "pbisim/error.hpp"

namespace pbisim::game {

namespace {

const SessionSetup& checked(const SessionSetup& setup) {
  if (!setup.plts) throw InvalidInput("session without a model");
  if (setup.left >= setup.plts->num_states() || setup.right >= setup.plts->num_states()) {
    throw InvalidInput("session states are not part of the model");
  }
  return setup;
}

}  // namespace

Session::Session(std::string id, SessionSetup setup)
    : id_(std::move(id)), setup_(checked(setup)), solver_(*setup_.plts),
      position_(PairPos{setup_.left, setup_.right}) {
  run_engine();
}

Outcome Session::current_outcome() const {
  if (std::holds_alternative<PairPos>(position_) && rounds_completed_ >= setup_.horizon) {
    return Outcome::DefenderWins;
  }
  if (legal_moves(*setup_.plts, position_).empty()) return terminal_outcome(position_);
  return Outcome::Ongoing;
}

void Session::advance(const Move& move) {
  Position next = apply_move(*setup_.plts, position_, move);
  history_.push_back({actor(move), move, rounds_completed_ + 1});
  if (std::holds_alternative<RespondPick>(move)) ++rounds_completed_;
  position_ = std::move(next);
}

void Session::run_engine() {
  while (current_outcome() == Outcome::Ongoing && owner(position_) != setup_.human) {
    std::optional<Move> m = owner(position_) == Player::Attacker
                                ? solver_.winning_move(position_, rounds_left())
                                : solver_.surviving_move(position_, rounds_left());
    if (!m) m = legal_moves(*setup_.plts, position_).front();
    advance(*m);
  }
}

SessionView Session::view() const {
  std::lock_guard lock(mutex_);
  SessionView v;
  v.id = id_;
  v.model = setup_.model;
  v.position = position_;
  v.to_move = owner(position_);
  v.human = setup_.human;
  v.outcome = current_outcome();
  if (v.outcome == Outcome::Ongoing && v.to_move == setup_.human) {
    v.legal = legal_moves(*setup_.plts, position_);
  }
  v.history = history_;
  v.rounds_completed = rounds_completed_;
  v.horizon = setup_.horizon;
  v.plts = setup_.plts;
  return v;
}

SessionView Session::play(const Move& move) {
  {
    std::lock_guard lock(mutex_);
    if (current_outcome() != Outcome::Ongoing) throw IllegalMove("the play is over");
    if (actor(move) != setup_.human || owner(position_) != setup_.human) {
      throw IllegalMove("it is not the " + std::string(player_name(setup_.human)) + "'s turn");
    }
    advance(move);
    run_engine();
  }
  return view();
}

std::string SessionStore::create(SessionSetup setup) {
  std::lock_guard lock(mutex_);
  std::string id = std::to_string(next_id_++);
  sessions_.emplace(id, std::make_shared<Session>(id, std::move(setup)));
  return id;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no session '" + id + "'");
  return it->second;
}

SessionView SessionStore::view(const std::string& id) const { return find(id)->view(); }

SessionView SessionStore::play(const std::string& id, const Move& move) { return find(id)->play(move); }

}  // namespace pbisim::game
