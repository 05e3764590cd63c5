#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gbg/tensor.hpp"
#include "gbg/torus_norm.hpp"

namespace gbg {

enum class BoundSource {
  /// (√π/2)^{m-1} ≤ S^ℂ / (√(n_1⋯n_m) max √n_k) ≤ 1.
  TorusSandwich,
  /// Anisotropic sign game, normalized by √(n_1⋯n_m)(√n_1 + ... + √n_m).
  AnisotropicSum,
  /// The same bounds restated with the max normalizer.
  AnisotropicMax,
  /// √(2/π) n^{3/2}, asymptotic only.
  CentralLimit,
  /// n^{3/2}/√2 from below, 8√(2 ln 9) n^{3/2} from above.
  SquareSandwich,
};

std::string to_string(BoundSource source);

/// lower = lower_constant · normalizer, upper = upper_constant · normalizer.
struct BoundReport {
  Shape shape;
  double lower = 0.0;
  double upper = 0.0;
  double normalizer = 1.0;
  double lower_constant = 0.0;
  double upper_constant = 0.0;
  BoundSource source = BoundSource::TorusSandwich;
  /// The lower constant only holds up to an unquantified o(1).
  bool asymptotic = false;
};

/// √(n_1⋯n_m) · max_k √n_k.
double torus_normalizer(const Shape& shape);

BoundReport torus_sandwich_bounds(const Shape& shape);

struct AnisotropicBounds {
  BoundReport sum_form;
  BoundReport max_form;
};

/// Lower constant 1/(m (√2)^{m-1}); upper constant 8 √(m!) √(ln(1 + 4m)) for
/// the sum normalizer and m times that for the max normalizer. Requires m >= 2.
AnisotropicBounds anisotropic_sign_bounds(const Shape& shape);

/// Square two-axis sign game: the finite-n sandwich and the asymptotic
/// central-limit constant, both normalized by n^{3/2}.
std::vector<BoundReport> square_sign_bounds(Index n);

/// Compares an estimate against the lower certificate and, for construction
/// tensors, the torus upper bound (with 1e-9 relative slack).
nlohmann::json sandwich_report(const Shape& shape, const NormEstimate& estimate, bool construction);

nlohmann::json to_json(const BoundReport& report);
/// shape,source,lower,upper,normalizer
std::string to_csv_row(const BoundReport& report);
std::string csv_header();

}  // namespace gbg
