#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "gbg/classic_game.hpp"
#include "gbg/tensor.hpp"
#include "gbg/torus_norm.hpp"

namespace gbg {

using AnyTensor = std::variant<SignTensor, UnimodularTensor>;

// Tensor interchange document:
//   {"shape": [n1, ..., nm], "kind": "sign" | "unimodular", "entries": [...]}
// with entries flat row-major, -1/1 integers for sign tensors and radians for
// unimodular ones.
nlohmann::json to_json(const SignTensor& tensor);
nlohmann::json to_json(const UnimodularTensor& tensor);
nlohmann::json to_json(const AnyTensor& tensor);
AnyTensor tensor_from_json(const nlohmann::json& doc);

const Shape& shape_of(const AnyTensor& tensor);
ComplexTensor to_complex(const AnyTensor& tensor);

/// {"kind": "signs" | "phases", "vectors": [[...], ...]}
nlohmann::json to_json(const AxisAssignment& assignment);
AxisAssignment assignment_from_json(const nlohmann::json& doc);

/// {"value", "witness_plan", "lights_remaining"}
nlohmann::json to_json(const GameResult& result);
/// {"value", "witness", "sweeps", "restarts_used", "converged", "seed"}
nlohmann::json to_json(const NormEstimate& estimate, std::uint64_t seed);
/// {"mean", "half_width_95", "samples", "seed"}
nlohmann::json to_json(const MeanEstimate& estimate, std::uint64_t seed);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);
AnyTensor read_tensor_file(const std::string& path);

}  // namespace gbg
