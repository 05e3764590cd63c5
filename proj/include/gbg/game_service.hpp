#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gbg/io.hpp"
#include "gbg/tensor.hpp"

namespace gbg {

enum class GameMode { Classic, Vector };
enum class MoveKind { Flip, Rotate };

/// A switch flip or knob rotation of slice (axis, index), 0-based.
struct Move {
  MoveKind kind = MoveKind::Flip;
  int axis = 0;
  Index index = 0;
  double angle = 0.0;
};

class GameError : public std::runtime_error {
 public:
  enum class Code { BadRequest, NotFound, Unprocessable };
  GameError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Served games are two-axis boards with at most this many rows or columns.
inline constexpr Index kMaxBoardDim = 32;

struct GameState {
  std::string id;
  GameMode mode = GameMode::Classic;
  std::uint64_t seed = 0;
  AnyTensor initial;
  AnyTensor pattern;
  /// Cumulative switches (classic) or phases (vector) applied since the start.
  AxisAssignment knobs;
  /// Classic: |Σ a|. Vector: |Σ e^{iθ}|.
  double score = 0.0;
  std::vector<Move> move_log;

  const Shape& shape() const { return shape_of(pattern); }
};

struct AssistResult {
  double best_value = 0.0;
  AxisAssignment witness;
  double relative_gap = 0.0;
  /// "exact", "heuristic" (classic board past the enumeration cap) or "alternating_ascent".
  std::string method;
};

double score_of(const AnyTensor& pattern);

/// Builds a game from a provided pattern or, when none is given, a random one
/// drawn from `seed`. A sign pattern may seed a vector game (angles 0 and π).
GameState new_game(std::string id, GameMode mode, const Shape& shape, std::optional<AnyTensor> pattern,
                   std::uint64_t seed);
/// Updates exactly the entries of slice (axis, index) and appends the move.
GameState apply_move(GameState state, const Move& move);
/// Replays the move log from the initial pattern.
GameState replay(const GameState& state);
GameState reset(GameState state);
/// Classic: exact best imbalance (search fallback past the cap). Vector:
/// alternating ascent with the default AscentConfig.
AssistResult assist(const GameState& state);

/// In-memory games. Moves on one game are serialized; different games do not
/// contend beyond the map lookup.
class GameStore {
 public:
  GameState create(GameMode mode, const Shape& shape, std::optional<AnyTensor> pattern, std::uint64_t seed);
  GameState get(const std::string& id) const;
  GameState move(const std::string& id, const Move& move);
  GameState reset(const std::string& id);
  AssistResult assist(const std::string& id) const;
  /// Game document including the initial pattern and move log.
  nlohmann::json snapshot(const std::string& id) const;
  void save_snapshot(const std::string& id, const std::string& path) const;

 private:
  struct Slot {
    std::mutex mutex;
    GameState state;
  };
  std::shared_ptr<Slot> find(const std::string& id) const;

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> games_;
  std::uint64_t created_ = 0;
};

std::string to_string(GameMode mode);
GameMode game_mode_from_string(const std::string& s);

nlohmann::json to_json(const GameState& state);
nlohmann::json to_json(const AssistResult& result);
nlohmann::json to_json(const Move& move);
/// {"kind": "flip" | "rotate", "axis": k, "index": j, "angle"?: θ} with 1-based axis and index.
Move move_from_json(const nlohmann::json& doc);

/// A plain tensor document, or a game snapshot (its current "pattern" is used).
AnyTensor tensor_from_document(const nlohmann::json& doc);

}  // namespace gbg
