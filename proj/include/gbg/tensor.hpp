#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gbg/errors.hpp"

namespace gbg {

using Index = Eigen::Index;
using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2π).
double canonical_angle(double radians);

/// Dimensions (n_1, ..., n_m) of a dense tensor.
///
/// Storage everywhere is row-major (last axis fastest). Axes and coordinates
/// are 0-based in the C++ API; the CLI and HTTP surfaces speak 1-based
/// coordinates and convert with from_one_based().
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<Index> dims);
  Shape(std::initializer_list<Index> dims) : Shape(std::vector<Index>(dims)) {}

  int order() const { return static_cast<int>(dims_.size()); }
  Index dim(int axis) const;
  const std::vector<Index>& dims() const { return dims_; }
  Index size() const { return size_; }
  Index max_dim() const;
  /// Product of all dims except `axis`.
  Index size_without(int axis) const;
  Index stride(int axis) const { return strides_[axis]; }

  Index flat_index(std::span<const Index> coords) const;
  std::vector<Index> coords(Index flat) const;
  /// Validates 1 <= j_k <= n_k and returns the 0-based coordinates.
  std::vector<Index> from_one_based(std::span<const Index> one_based) const;

  /// Axis p of the result is axis perm[p] of this shape.
  Shape permuted(std::span<const int> perm) const;

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<Index> dims_;
  std::vector<Index> strides_;
  Index size_ = 0;
};

/// Dense row-major tensor with Eigen vector storage. This is the working
/// type for contractions; the domain types below convert into it.
template <typename Scalar>
class DenseTensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DenseTensor() = default;
  explicit DenseTensor(Shape shape) : shape_(std::move(shape)), data_(Vector::Zero(shape_.size())) {}
  DenseTensor(Shape shape, Vector data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_.size()) {
      throw DimensionError("tensor data has " + std::to_string(data_.size()) + " entries, shape " +
                           shape_.to_string() + " needs " + std::to_string(shape_.size()));
    }
  }

  const Shape& shape() const { return shape_; }
  const Vector& data() const { return data_; }
  Vector& data() { return data_; }
  Scalar operator()(std::span<const Index> coords) const { return data_(shape_.flat_index(coords)); }

  /// Axis p of the result is axis perm[p] of this tensor.
  DenseTensor permuted(std::span<const int> perm) const {
    Shape out_shape = shape_.permuted(perm);
    Vector out(out_shape.size());
    const int m = shape_.order();
    std::vector<Index> coords(m, 0);
    for (Index flat = 0; flat < out_shape.size(); ++flat) {
      Index src = 0;
      for (int p = 0; p < m; ++p) src += coords[p] * shape_.stride(perm[p]);
      out(flat) = data_(src);
      for (int p = m - 1; p >= 0; --p) {
        if (++coords[p] < out_shape.dim(p)) break;
        coords[p] = 0;
      }
    }
    return DenseTensor(std::move(out_shape), std::move(out));
  }

 private:
  Shape shape_;
  Vector data_;
};

using ComplexTensor = DenseTensor<Complex>;
using ExactTensor = DenseTensor<std::int64_t>;

namespace detail {

/// Contracts `axis` of a row-major block with dimensions `dims` against `x`
/// and removes the axis from `dims`.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> contract_axis(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& data,
                                                       std::vector<Index>& dims, int axis,
                                                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) {
  using Block = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  Index pre = 1;
  Index post = 1;
  for (int k = 0; k < axis; ++k) pre *= dims[k];
  for (int k = axis + 1; k < static_cast<int>(dims.size()); ++k) post *= dims[k];
  const Index n = dims[axis];
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(pre * post);
  for (Index p = 0; p < pre; ++p) {
    out.segment(p * post, post).noalias() = Block(data.data() + p * n * post, n, post).transpose() * x;
  }
  dims.erase(dims.begin() + axis);
  return out;
}

/// Contracts every axis except `free_axis` (pass -1 to contract all of them,
/// giving a length-1 vector).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> contract_all_but(
    const DenseTensor<Scalar>& t, std::span<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors,
    int free_axis) {
  std::vector<Index> dims = t.shape().dims();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = t.data();
  const int m = t.shape().order();
  for (int k = m - 1; k > free_axis; --k) v = contract_axis(v, dims, k, vectors[k]);
  for (int k = 0; k < free_axis; ++k) v = contract_axis(v, dims, 0, vectors[k]);
  return v;
}

}  // namespace detail

/// ±1 array: a light pattern or a sign coefficient array.
class SignTensor {
 public:
  using Entries = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

  SignTensor() = default;
  SignTensor(Shape shape, Entries entries);
  static SignTensor ones(Shape shape);

  const Shape& shape() const { return shape_; }
  const Entries& entries() const { return entries_; }
  int at(std::span<const Index> coords) const { return entries_(shape_.flat_index(coords)); }

  ExactTensor exact() const;
  ComplexTensor to_complex() const;

  friend bool operator==(const SignTensor& a, const SignTensor& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

 private:
  Shape shape_;
  Entries entries_;
};

/// Unit-modulus complex array stored as angles in [0, 2π); the complex
/// entries are realized on demand.
class UnimodularTensor {
 public:
  UnimodularTensor() = default;
  UnimodularTensor(Shape shape, Eigen::VectorXd angles);
  /// Throws std::invalid_argument if some |entry| differs from 1 by more than `tol`.
  static UnimodularTensor from_complex(const ComplexTensor& t, double tol = 1e-9);

  const Shape& shape() const { return shape_; }
  const Eigen::VectorXd& angles() const { return angles_; }
  Complex at(std::span<const Index> coords) const { return std::polar(1.0, angles_(shape_.flat_index(coords))); }

  ComplexTensor to_complex() const;

  friend bool operator==(const UnimodularTensor& a, const UnimodularTensor& b) {
    return a.shape_ == b.shape_ && a.angles_ == b.angles_;
  }

 private:
  Shape shape_;
  Eigen::VectorXd angles_;
};

enum class AssignmentKind { Signs, Phases };

/// One vector per axis: switch signs (±1) or knob phases (radians in [0, 2π)).
class AxisAssignment {
 public:
  AxisAssignment() = default;
  static AxisAssignment signs(std::vector<Eigen::VectorXd> vectors);
  static AxisAssignment phases(std::vector<Eigen::VectorXd> vectors);
  /// All switches +1, or all phases 0.
  static AxisAssignment identity(const Shape& shape, AssignmentKind kind);

  AssignmentKind kind() const { return kind_; }
  int axes() const { return static_cast<int>(vectors_.size()); }
  const Eigen::VectorXd& vector(int axis) const { return vectors_.at(axis); }
  const std::vector<Eigen::VectorXd>& vectors() const { return vectors_; }

  Eigen::VectorXcd complex_vector(int axis) const;
  /// Signs kind only.
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> sign_vector(int axis) const;

  /// Throws DimensionError unless there is one vector per axis with matching
  /// length; the vector for `skip_axis` is not checked.
  void check_against(const Shape& shape, int skip_axis = -1) const;

  friend bool operator==(const AxisAssignment& a, const AxisAssignment& b);

 private:
  AssignmentKind kind_ = AssignmentKind::Signs;
  std::vector<Eigen::VectorXd> vectors_;
};

/// Σ a_{j_1..j_m} x^{(1)}_{j_1} ... x^{(m)}_{j_m}, in exact integers.
std::int64_t evaluate_exact(const SignTensor& tensor, const AxisAssignment& signs);
Complex evaluate(const SignTensor& tensor, const AxisAssignment& assignment);
Complex evaluate(const UnimodularTensor& tensor, const AxisAssignment& assignment);
Complex evaluate(const ComplexTensor& tensor, const AxisAssignment& assignment);

/// Coefficient vector b of the axis-`free_axis` variable: evaluate = Σ_j b_j x_j.
/// The assignment's vector for the free axis is ignored.
Eigen::VectorXcd partial_contract(const SignTensor& tensor, const AxisAssignment& assignment, int free_axis);
Eigen::VectorXcd partial_contract(const UnimodularTensor& tensor, const AxisAssignment& assignment, int free_axis);
Eigen::VectorXcd partial_contract(const ComplexTensor& tensor, const AxisAssignment& assignment, int free_axis);
Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> partial_contract_exact(const SignTensor& tensor,
                                                                     const AxisAssignment& signs, int free_axis);

/// ℓ₂ norm of each slice obtained by fixing `axis`.
Eigen::VectorXd slice_l2_profile(const ComplexTensor& tensor, int axis);
Eigen::VectorXd slice_l2_profile(const SignTensor& tensor, int axis);
Eigen::VectorXd slice_l2_profile(const UnimodularTensor& tensor, int axis);

}  // namespace gbg
