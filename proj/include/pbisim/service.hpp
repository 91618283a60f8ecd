#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"
#include "pbisim/session.hpp"

namespace pbisim::service {

using nlohmann::json;

struct Response {
  int status = 200;
  json body;
};

/// Loaded model a client can start sessions on.
struct Model {
  std::string name;
  std::string source;  // file text
};

/// Session setup from a plts or ppda file text; pushdown machines are
/// unfolded as deep as the horizon requires.
game::SessionSetup make_setup(const std::string& source, const std::string& left, const std::string& right,
                              game::Player human, std::size_t horizon, std::string model);

json rational_json(const Rational& r);
json position_json(const Plts& plts, const game::Position& pos);
json move_json(const Plts& plts, const game::Move& move);
json view_json(const game::SessionView& v);
/// Move described by index into the legal list or by its fields; throws
/// IllegalMove if it is not among the legal moves.
game::Move move_from_json(const game::SessionView& v, const json& j);

/// Transport-independent handler behind the HTTP session API.
class SessionService {
 public:
  void add_model(Model m);
  Response handle(const std::string& method, const std::string& path, const std::string& body);

 private:
  Response create(const json& req);

  std::mutex mutex_;
  std::map<std::string, Model> models_;
  game::SessionStore store_;
};

/// Blocks serving the API on the given port.
void serve_http(SessionService& service, const std::string& host, int port);

}  // namespace pbisim::service
