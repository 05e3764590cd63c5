#include "gbg/game_service.hpp"

#include <cmath>
#include <cstdio>

#include "gbg/classic_game.hpp"
#include "gbg/rng.hpp"
#include "gbg/torus_norm.hpp"

namespace gbg {

namespace {

using nlohmann::json;

[[noreturn]] void unprocessable(const std::string& message) {
  throw GameError(GameError::Code::Unprocessable, message);
}

std::string token_for(std::uint64_t n) {
  // splitmix64 finalizer; ids only need to be unique and opaque.
  std::uint64_t z = n + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(z));
  return buf;
}

void check_board(const Shape& shape) {
  if (shape.order() != 2) unprocessable("served games need a two-axis shape, got " + shape.to_string());
  if (shape.dim(0) > kMaxBoardDim || shape.dim(1) > kMaxBoardDim) {
    unprocessable("board dims are limited to " + std::to_string(kMaxBoardDim));
  }
}

AnyTensor random_pattern(GameMode mode, const Shape& shape, std::uint64_t seed) {
  auto g = make_stream(seed, 0);
  if (mode == GameMode::Classic) {
    SignTensor::Entries e(shape.size());
    for (Index i = 0; i < e.size(); ++i) e(i) = static_cast<std::int8_t>(random_sign(g));
    return SignTensor(shape, std::move(e));
  }
  Eigen::VectorXd angles(shape.size());
  for (Index i = 0; i < angles.size(); ++i) angles(i) = uniform_angle(g);
  return UnimodularTensor(shape, std::move(angles));
}

UnimodularTensor as_unimodular(const SignTensor& t) {
  return UnimodularTensor(t.shape(), t.entries().cast<double>().unaryExpr([](double s) {
    return s < 0 ? std::numbers::pi : 0.0;
  }));
}

}  // namespace

double score_of(const AnyTensor& pattern) {
  if (const auto* s = std::get_if<SignTensor>(&pattern)) {
    return std::abs(static_cast<double>(s->entries().cast<std::int64_t>().sum()));
  }
  const auto& u = std::get<UnimodularTensor>(pattern);
  Complex sum(0.0, 0.0);
  for (Index i = 0; i < u.angles().size(); ++i) sum += std::polar(1.0, u.angles()(i));
  return std::abs(sum);
}

GameState new_game(std::string id, GameMode mode, const Shape& shape, std::optional<AnyTensor> pattern,
                   std::uint64_t seed) {
  check_board(shape);
  GameState s;
  s.id = std::move(id);
  s.mode = mode;
  s.seed = seed;
  if (pattern) {
    if (shape_of(*pattern) != shape) {
      unprocessable("pattern shape " + shape_of(*pattern).to_string() + " does not match " + shape.to_string());
    }
    if (mode == GameMode::Classic && !std::holds_alternative<SignTensor>(*pattern)) {
      unprocessable("classic games need a sign pattern");
    }
    if (mode == GameMode::Vector && std::holds_alternative<SignTensor>(*pattern)) {
      pattern = as_unimodular(std::get<SignTensor>(*pattern));
    }
    s.initial = std::move(*pattern);
  } else {
    s.initial = random_pattern(mode, shape, seed);
  }
  s.pattern = s.initial;
  s.knobs = AxisAssignment::identity(shape, mode == GameMode::Classic ? AssignmentKind::Signs : AssignmentKind::Phases);
  s.score = score_of(s.pattern);
  return s;
}

GameState apply_move(GameState state, const Move& move) {
  const Shape& shape = state.shape();
  if (move.axis < 0 || move.axis >= shape.order()) unprocessable("axis out of range");
  if (move.index < 0 || move.index >= shape.dim(move.axis)) unprocessable("index out of range");
  const bool classic = state.mode == GameMode::Classic;
  if (classic != (move.kind == MoveKind::Flip)) {
    unprocessable(classic ? "classic games only accept flips" : "vector games only accept rotations");
  }
  if (!classic && !std::isfinite(move.angle)) unprocessable("rotation angle must be finite");

  const Index stride = shape.stride(move.axis);
  const Index n = shape.dim(move.axis);
  auto in_slice = [&](Index flat) { return (flat / stride) % n == move.index; };
  std::vector<Eigen::VectorXd> knobs = state.knobs.vectors();
  if (classic) {
    const auto& t = std::get<SignTensor>(state.pattern);
    SignTensor::Entries e = t.entries();
    for (Index flat = 0; flat < e.size(); ++flat) {
      if (in_slice(flat)) e(flat) = static_cast<std::int8_t>(-e(flat));
    }
    state.pattern = SignTensor(shape, std::move(e));
    knobs[move.axis](move.index) = -knobs[move.axis](move.index);
    state.knobs = AxisAssignment::signs(std::move(knobs));
  } else {
    const auto& t = std::get<UnimodularTensor>(state.pattern);
    Eigen::VectorXd angles = t.angles();
    for (Index flat = 0; flat < angles.size(); ++flat) {
      if (in_slice(flat)) angles(flat) = canonical_angle(angles(flat) + move.angle);
    }
    state.pattern = UnimodularTensor(shape, std::move(angles));
    knobs[move.axis](move.index) += move.angle;
    state.knobs = AxisAssignment::phases(std::move(knobs));
  }
  state.score = score_of(state.pattern);
  state.move_log.push_back(move);
  return state;
}

GameState replay(const GameState& state) {
  GameState s = reset(state);
  for (const Move& m : state.move_log) s = apply_move(std::move(s), m);
  return s;
}

GameState reset(GameState state) {
  state.pattern = state.initial;
  state.knobs = AxisAssignment::identity(
      state.shape(), state.mode == GameMode::Classic ? AssignmentKind::Signs : AssignmentKind::Phases);
  state.move_log.clear();
  state.score = score_of(state.pattern);
  return state;
}

AssistResult assist(const GameState& state) {
  AssistResult r;
  if (state.mode == GameMode::Classic) {
    const LightPattern pattern(std::get<SignTensor>(state.pattern));
    GameResult g;
    try {
      g = best_imbalance_exact(pattern);
      r.method = "exact";
    } catch (const CapacityError&) {
      g = best_imbalance_search(pattern, AscentConfig{}.restarts, AscentConfig{}.seed);
      r.method = "heuristic";
    }
    r.best_value = static_cast<double>(g.imbalance);
    r.witness = std::move(g.witness);
  } else {
    NormEstimate e = alternating_ascent(std::get<UnimodularTensor>(state.pattern), AscentConfig{});
    r.best_value = e.value;
    r.witness = std::move(e.witness);
    r.method = "alternating_ascent";
  }
  r.relative_gap = r.best_value > 0.0 ? (r.best_value - state.score) / r.best_value : 0.0;
  return r;
}

// GameStore

std::shared_ptr<GameStore::Slot> GameStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = games_.find(id);
  if (it == games_.end()) throw GameError(GameError::Code::NotFound, "no game with id " + id);
  return it->second;
}

GameState GameStore::create(GameMode mode, const Shape& shape, std::optional<AnyTensor> pattern, std::uint64_t seed) {
  auto slot = std::make_shared<Slot>();
  std::unique_lock lock(mutex_);
  std::string id = token_for(created_);
  slot->state = new_game(id, mode, shape, std::move(pattern), seed);
  ++created_;
  games_.emplace(id, slot);
  return slot->state;
}

GameState GameStore::get(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return slot->state;
}

GameState GameStore::move(const std::string& id, const Move& m) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  slot->state = apply_move(slot->state, m);
  return slot->state;
}

GameState GameStore::reset(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  slot->state = gbg::reset(slot->state);
  return slot->state;
}

AssistResult GameStore::assist(const std::string& id) const {
  return gbg::assist(get(id));
}

json GameStore::snapshot(const std::string& id) const { return to_json(get(id)); }

void GameStore::save_snapshot(const std::string& id, const std::string& path) const {
  write_json_file(path, snapshot(id));
}

// Documents

std::string to_string(GameMode mode) { return mode == GameMode::Classic ? "classic" : "vector"; }

GameMode game_mode_from_string(const std::string& s) {
  if (s == "classic") return GameMode::Classic;
  if (s == "vector") return GameMode::Vector;
  throw GameError(GameError::Code::BadRequest, "mode must be \"classic\" or \"vector\"");
}

json to_json(const Move& move) {
  json j{{"kind", move.kind == MoveKind::Flip ? "flip" : "rotate"},
         {"axis", move.axis + 1},
         {"index", move.index + 1}};
  if (move.kind == MoveKind::Rotate) j["angle"] = move.angle;
  return j;
}

json to_json(const GameState& state) {
  json log = json::array();
  for (const Move& m : state.move_log) log.push_back(to_json(m));
  return {{"id", state.id},
          {"mode", to_string(state.mode)},
          {"shape", state.shape().dims()},
          {"seed", state.seed},
          {"pattern", to_json(state.pattern)},
          {"initial", to_json(state.initial)},
          {"knobs", to_json(state.knobs)},
          {"score", state.score},
          {"move_log", log}};
}

json to_json(const AssistResult& result) {
  return {{"best_value", result.best_value},
          {"witness_plan", to_json(result.witness)},
          {"relative_gap", result.relative_gap},
          {"method", result.method}};
}

Move move_from_json(const json& doc) {
  auto bad = [](const std::string& m) { return GameError(GameError::Code::BadRequest, m); };
  if (!doc.is_object()) throw bad("move must be an object");
  const char* kind_key = doc.contains("kind") ? "kind" : "move";
  if (!doc.contains(kind_key) || !doc[kind_key].is_string()) throw bad("move needs \"kind\": \"flip\" | \"rotate\"");
  Move m;
  const std::string kind = doc[kind_key].get<std::string>();
  if (kind == "flip") {
    m.kind = MoveKind::Flip;
  } else if (kind == "rotate") {
    m.kind = MoveKind::Rotate;
    if (!doc.contains("angle") || !doc["angle"].is_number()) throw bad("rotate needs a numeric \"angle\"");
    m.angle = doc["angle"].get<double>();
  } else {
    throw bad("move kind must be \"flip\" or \"rotate\"");
  }
  for (const char* key : {"axis", "index"}) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) throw bad(std::string("move needs integer \"") + key + "\"");
  }
  m.axis = doc["axis"].get<int>() - 1;
  m.index = doc["index"].get<Index>() - 1;
  return m;
}

AnyTensor tensor_from_document(const json& doc) {
  if (doc.is_object() && doc.contains("pattern") && doc["pattern"].is_object()) return tensor_from_json(doc["pattern"]);
  return tensor_from_json(doc);
}

}  // namespace gbg
