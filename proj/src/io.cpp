#include "gbg/io.hpp"

#include <fstream>
#include <sstream>

namespace gbg {

namespace {

using nlohmann::json;

Shape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("\"shape\" must be a non-empty array of integers");
  std::vector<Index> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer()) throw FormatError("\"shape\" entries must be integers");
    dims.push_back(d.get<Index>());
  }
  try {
    return Shape(std::move(dims));
  } catch (const DimensionError& e) {
    throw FormatError(e.what());
  }
}

Eigen::VectorXd numbers_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError(std::string(what) + " must contain numbers only");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

json numbers_to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

json to_json(const SignTensor& tensor) {
  const auto& e = tensor.entries();
  std::vector<int> entries(e.data(), e.data() + e.size());
  return {{"shape", tensor.shape().dims()}, {"kind", "sign"}, {"entries", entries}};
}

json to_json(const UnimodularTensor& tensor) {
  return {{"shape", tensor.shape().dims()}, {"kind", "unimodular"}, {"entries", numbers_to_json(tensor.angles())}};
}

json to_json(const AnyTensor& tensor) {
  return std::visit([](const auto& t) { return to_json(t); }, tensor);
}

AnyTensor tensor_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("tensor document must be an object");
  for (const char* key : {"shape", "kind", "entries"}) {
    if (!doc.contains(key)) throw FormatError(std::string("tensor document is missing \"") + key + "\"");
  }
  const Shape shape = shape_from_json(doc["shape"]);
  const json& entries = doc["entries"];
  if (!entries.is_array() || static_cast<Index>(entries.size()) != shape.size()) {
    throw FormatError("\"entries\" must be an array of " + std::to_string(shape.size()) + " values");
  }
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  if (kind == "sign") {
    SignTensor::Entries e(shape.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const json& v = entries[i];
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        throw FormatError("sign tensor entries must be the integers -1 or 1");
      }
      e(static_cast<Index>(i)) = static_cast<std::int8_t>(v.get<int>());
    }
    return SignTensor(shape, std::move(e));
  }
  if (kind == "unimodular") {
    try {
      return UnimodularTensor(shape, numbers_from_json(entries, "\"entries\""));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("\"kind\" must be \"sign\" or \"unimodular\"");
}

const Shape& shape_of(const AnyTensor& tensor) {
  return std::visit([](const auto& t) -> const Shape& { return t.shape(); }, tensor);
}

ComplexTensor to_complex(const AnyTensor& tensor) {
  return std::visit([](const auto& t) { return t.to_complex(); }, tensor);
}

json to_json(const AxisAssignment& assignment) {
  json vectors = json::array();
  for (const auto& v : assignment.vectors()) {
    if (assignment.kind() == AssignmentKind::Signs) {
      vectors.push_back(std::vector<int>(v.data(), v.data() + v.size()));
    } else {
      vectors.push_back(numbers_to_json(v));
    }
  }
  return {{"kind", assignment.kind() == AssignmentKind::Signs ? "signs" : "phases"}, {"vectors", vectors}};
}

AxisAssignment assignment_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("vectors") || !doc["vectors"].is_array()) {
    throw FormatError("assignment document needs \"kind\" and \"vectors\"");
  }
  std::vector<Eigen::VectorXd> vectors;
  for (const auto& v : doc["vectors"]) vectors.push_back(numbers_from_json(v, "assignment vector"));
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  try {
    if (kind == "signs") return AxisAssignment::signs(std::move(vectors));
    if (kind == "phases") return AxisAssignment::phases(std::move(vectors));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("assignment \"kind\" must be \"signs\" or \"phases\"");
}

json to_json(const GameResult& result) {
  return {{"value", result.imbalance},
          {"witness_plan", to_json(result.witness)},
          {"lights_remaining", result.lights_remaining}};
}

json to_json(const NormEstimate& estimate, std::uint64_t seed) {
  return {{"value", estimate.value},
          {"witness", to_json(estimate.witness)},
          {"sweeps", estimate.sweeps},
          {"restarts_used", estimate.restarts_used},
          {"converged", estimate.converged},
          {"seed", seed}};
}

json to_json(const MeanEstimate& estimate, std::uint64_t seed) {
  return {{"mean", estimate.mean},
          {"half_width_95", estimate.half_width_95},
          {"samples", estimate.samples},
          {"seed", seed}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

AnyTensor read_tensor_file(const std::string& path) { return tensor_from_json(read_json_file(path)); }

}  // namespace gbg
