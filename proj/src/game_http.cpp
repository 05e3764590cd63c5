#include "gbg/game_http.hpp"

#include <httplib.h>

namespace gbg {

namespace {

using nlohmann::json;

GameError bad_request(const std::string& message) { return GameError(GameError::Code::BadRequest, message); }

void flatten(const json& j, json& out) {
  if (j.is_array()) {
    for (const auto& e : j) flatten(e, out);
  } else {
    out.push_back(j);
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, {{"code", code}, {"message", message}}, status);
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const GameError& e) {
      switch (e.code()) {
        case GameError::Code::BadRequest: send_error(res, 400, "bad_request", e.what()); break;
        case GameError::Code::NotFound: send_error(res, 404, "not_found", e.what()); break;
        case GameError::Code::Unprocessable: send_error(res, 422, "unprocessable", e.what()); break;
      }
    } catch (const json::exception& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const FormatError& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const std::invalid_argument& e) {
      send_error(res, 422, "unprocessable", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw bad_request(std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace

CreateRequest create_request_from_json(const json& body) {
  if (!body.is_object()) throw bad_request("body must be an object");
  CreateRequest r;
  if (!body.contains("mode") || !body["mode"].is_string()) throw bad_request("\"mode\" is required");
  r.mode = game_mode_from_string(body["mode"].get<std::string>());

  if (body.contains("seed")) {
    const json& seed = body["seed"];
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw bad_request("\"seed\" must be a non-negative integer");
    }
    r.seed = seed.get<std::uint64_t>();
  }

  std::optional<Shape> shape;
  if (body.contains("shape")) {
    if (!body["shape"].is_array()) throw bad_request("\"shape\" must be an array");
    std::vector<Index> dims;
    for (const auto& d : body["shape"]) {
      if (!d.is_number_integer()) throw bad_request("\"shape\" entries must be integers");
      dims.push_back(d.get<Index>());
    }
    try {
      shape = Shape(std::move(dims));
    } catch (const DimensionError& e) {
      throw GameError(GameError::Code::Unprocessable, e.what());
    }
  }

  if (body.contains("pattern") && !body["pattern"].is_null()) {
    const json& p = body["pattern"];
    if (p.is_object()) {
      r.pattern = tensor_from_json(p);
      if (!shape) shape = shape_of(*r.pattern);
    } else if (p.is_array()) {
      if (!shape) throw bad_request("an array \"pattern\" needs a \"shape\"");
      json entries = json::array();
      flatten(p, entries);
      json doc{{"shape", shape->dims()},
               {"kind", r.mode == GameMode::Classic ? "sign" : "unimodular"},
               {"entries", entries}};
      r.pattern = tensor_from_json(doc);
    } else {
      throw bad_request("\"pattern\" must be a tensor document or an array");
    }
  }
  if (!shape) throw bad_request("\"shape\" is required");
  r.shape = *shape;
  return r;
}

void register_routes(httplib::Server& server, GameStore& store) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  server.Post("/api/v1/games", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                const CreateRequest r = create_request_from_json(parse_body(req));
                send_json(res, to_json(store.create(r.mode, r.shape, r.pattern, r.seed)), 201);
              }));
  server.Get(R"(/api/v1/games/([0-9a-f]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, to_json(store.get(req.matches[1])));
             }));
  server.Post(R"(/api/v1/games/([0-9a-f]+)/moves)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                send_json(res, to_json(store.move(req.matches[1], move_from_json(parse_body(req)))));
              }));
  server.Post(R"(/api/v1/games/([0-9a-f]+)/assist)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                send_json(res, to_json(store.assist(req.matches[1])));
              }));
  server.Post(R"(/api/v1/games/([0-9a-f]+)/reset)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                send_json(res, to_json(store.reset(req.matches[1])));
              }));
  server.Get(R"(/api/v1/games/([0-9a-f]+)/snapshot)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, store.snapshot(req.matches[1]));
             }));
  server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not_found" : "error", "no such route");
    }
  });
}

bool serve(GameStore& store, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, store);
  return server.listen(host, port);
}

}  // namespace gbg
