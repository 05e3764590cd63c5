#pragma once

#include <string>

#include "gbg/game_service.hpp"

namespace httplib {
class Server;
}

namespace gbg {

/// Mounts the /api/v1 game routes:
///   POST /api/v1/games                {mode, shape, seed? | pattern?}
///   GET  /api/v1/games/{id}
///   POST /api/v1/games/{id}/moves     {kind: flip|rotate, axis, index, angle?}
///   POST /api/v1/games/{id}/assist
///   POST /api/v1/games/{id}/reset
///   GET  /api/v1/games/{id}/snapshot
/// Errors are {code, message} with status 400, 404 or 422.
void register_routes(httplib::Server& server, GameStore& store);

/// Parses a create-game body into its parts; exposed for tests.
struct CreateRequest {
  GameMode mode = GameMode::Classic;
  Shape shape;
  std::optional<AnyTensor> pattern;
  std::uint64_t seed = 1;
};
CreateRequest create_request_from_json(const nlohmann::json& body);

/// Blocks serving on host:port until the server is stopped.
bool serve(GameStore& store, const std::string& host, int port);

}  // namespace gbg
