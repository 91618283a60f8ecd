#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pbisim/game.hpp"

namespace pbisim::game {

struct SessionSetup {
  std::shared_ptr<const Plts> plts;
  StateId left = 0, right = 0;
  Player human = Player::Defender;
  std::size_t horizon = 1;
  std::string model;  // label echoed back to clients
};

struct HistoryEntry {
  Player actor = Player::Attacker;
  Move move;
  std::size_t round = 0;  // protocol round the move belongs to, from 1
};

struct SessionView {
  std::string id;
  std::string model;
  Position position;
  Player to_move = Player::Attacker;
  Player human = Player::Defender;
  std::vector<Move> legal;  // legal moves for the human; empty unless it is their turn
  std::vector<HistoryEntry> history;
  Outcome outcome = Outcome::Ongoing;
  std::size_t rounds_completed = 0;
  std::size_t horizon = 0;
  std::shared_ptr<const Plts> plts;
};

/// One play between a human and the engine. The engine replies with the
/// first optimal move in canonical order.
class Session {
 public:
  Session(std::string id, SessionSetup setup);

  SessionView view() const;
  /// Applies a human move and lets the engine answer; IllegalMove if the
  /// move is not legal or it is not the human's turn.
  SessionView play(const Move& move);

 private:
  void advance(const Move& move);
  void run_engine();
  Outcome current_outcome() const;
  std::size_t rounds_left() const { return setup_.horizon - rounds_completed_; }

  std::string id_;
  SessionSetup setup_;
  Solver solver_;
  Position position_;
  std::vector<HistoryEntry> history_;
  std::size_t rounds_completed_ = 0;
  mutable std::mutex mutex_;
};

/// Thread-safe collection of sessions; moves on one session are serialised.
class SessionStore {
 public:
  std::string create(SessionSetup setup);
  SessionView view(const std::string& id) const;
  SessionView play(const std::string& id, const Move& move);

 private:
  std::shared_ptr<Session> find(const std::string& id) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
};

}  // namespace pbisim::game
