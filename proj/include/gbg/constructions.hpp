#pragma once

#include <Eigen/Core>

#include "gbg/tensor.hpp"

namespace gbg {

/// n x n matrix a_{rs} = e^{2πi rs/n} with 1-based r, s.
struct FourierMatrix {
  Index n = 0;
  Eigen::MatrixXcd entries;
  /// Exact angles 2π((rs mod n)/n) in [0, 2π).
  Eigen::MatrixXd angles;
};

FourierMatrix fourier_matrix(Index n);

/// max over (r, s) of |Σ_t a_{rt} conj(a_{st}) − n δ_{rs}|. Throws
/// DimensionError for a non-square matrix.
double verify_orthogonality(const Eigen::MatrixXcd& matrix);

/// Chained Fourier-matrix tensor with unimodular entries whose torus norm is
/// at most √(n_1 ⋯ n_m) · max_k √n_k.
///
/// Dims are stably sorted ascending to s_1 <= ... <= s_m; chain matrix k is
/// fourier_matrix(s_{k+1}) and c_{i_1..i_m} = Π_k a^{(k)}_{i_k i_{k+1}} over
/// the box i_k <= s_k. Axes are then permuted back to the caller's order.
/// Requires m >= 2.
UnimodularTensor extremal_tensor(const Shape& shape);

}  // namespace gbg
