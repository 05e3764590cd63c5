#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gbg/tensor.hpp"

namespace gbg {

struct AscentConfig {
  int restarts = 50;
  /// Stop once a full sweep improves the objective by at most tol * value.
  double tol = 1e-10;
  int max_sweeps = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Certified lower bound on the torus norm sup |A(x^{(1)}, ..., x^{(m)})|
/// over unimodular inputs; `witness` reproduces `value`.
struct NormEstimate {
  double value = 0.0;
  AxisAssignment witness;
  int sweeps = 0;
  int restarts_used = 0;
  bool converged = false;
};

struct MeanEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::int64_t samples = 0;
};

/// One ascent run from a given phase assignment.
struct AscentRun {
  double value = 0.0;
  AxisAssignment phases;
  int sweeps = 0;
  bool converged = false;
};

/// Coordinate ascent from `start`: each half-step fixes all axes but one and
/// aligns every free phase against its coefficient b_j, which lifts the
/// objective to Σ_j |b_j|. Components with b_j = 0 keep their phase.
/// If `trace` is given, the objective before the first half-step and after
/// every half-step is appended to it.
AscentRun ascend_from(const ComplexTensor& tensor, const AxisAssignment& start, double tol, int max_sweeps,
                      std::vector<double>* trace = nullptr);

/// Best of cfg.restarts ascent runs. Restart 0 starts from all-zero phases,
/// restart r > 0 from uniform phases drawn from stream (seed, r).
NormEstimate alternating_ascent(const ComplexTensor& tensor, const AscentConfig& cfg = {});
NormEstimate alternating_ascent(const UnimodularTensor& tensor, const AscentConfig& cfg = {});
NormEstimate alternating_ascent(const SignTensor& tensor, const AscentConfig& cfg = {});

/// Exhaustive search with phases 2πg/G on every coordinate of all axes but the
/// last, which is closed in closed form. The first phase is pinned to 0 (the
/// grid is invariant under a global rotation by 2π/G). Throws CapacityError
/// when G^(n_1 + ... + n_{m-1}) exceeds 2^bit_cap.
NormEstimate phase_grid_lower_bound(const ComplexTensor& tensor, int grid, int bit_cap = 30);
NormEstimate phase_grid_lower_bound(const UnimodularTensor& tensor, int grid, int bit_cap = 30);
NormEstimate phase_grid_lower_bound(const SignTensor& tensor, int grid, int bit_cap = 30);

/// Monte Carlo mean of |Σ a e^{i t ...}| with independent uniform angles on
/// each coordinate of `random_axes`. Axes not listed stay at phase 0. The
/// half-width is the normal-approximation 95% interval.
MeanEstimate steinhaus_average(const ComplexTensor& coeffs, std::span<const int> random_axes, std::int64_t samples,
                               std::uint64_t seed);
/// Single-axis form: mean of |Σ_j a_j e^{i t_j}|.
MeanEstimate steinhaus_average(const Eigen::VectorXcd& coeffs, std::int64_t samples, std::uint64_t seed);

/// 2^{-n} Σ_ε |Σ_j ε_j a_j| over all sign vectors, n <= 24.
double rademacher_average_exact(const Eigen::VectorXd& coeffs);

/// √π / 2, the first-moment Steinhaus constant.
double steinhaus_constant();

/// (√π/2)^{m-1} · n_max · √(product of the other dims): a lower bound on the
/// torus norm of every unimodular tensor of this shape.
double unimodular_lower_certificate(const Shape& shape);

}  // namespace gbg
