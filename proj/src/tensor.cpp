#include "gbg/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gbg {

double canonical_angle(double radians) {
  if (!std::isfinite(radians)) throw std::invalid_argument("angle is not finite");
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π.
  if (a >= kTwoPi || a == 0.0) a = 0.0;  // also clears -0
  return a;
}

Shape::Shape(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("shape needs at least one axis");
  std::uint64_t product = 1;
  for (Index d : dims_) {
    if (d < 1) throw DimensionError("shape dims must be >= 1");
    if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(d), &product) ||
        product > static_cast<std::uint64_t>(std::numeric_limits<Index>::max())) {
      throw DimensionError("shape size overflows 64 bits");
    }
  }
  size_ = static_cast<Index>(product);
  strides_.assign(dims_.size(), 1);
  for (int k = order() - 2; k >= 0; --k) strides_[k] = strides_[k + 1] * dims_[k + 1];
}

Index Shape::dim(int axis) const {
  if (axis < 0 || axis >= order()) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for shape " + to_string());
  }
  return dims_[axis];
}

Index Shape::max_dim() const { return *std::max_element(dims_.begin(), dims_.end()); }

Index Shape::size_without(int axis) const { return size_ / dim(axis); }

Index Shape::flat_index(std::span<const Index> coords) const {
  if (static_cast<int>(coords.size()) != order()) throw DimensionError("multi-index has wrong length");
  Index flat = 0;
  for (int k = 0; k < order(); ++k) {
    if (coords[k] < 0 || coords[k] >= dims_[k]) throw DimensionError("multi-index out of range");
    flat += coords[k] * strides_[k];
  }
  return flat;
}

std::vector<Index> Shape::coords(Index flat) const {
  std::vector<Index> out(dims_.size());
  for (int k = 0; k < order(); ++k) {
    out[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return out;
}

std::vector<Index> Shape::from_one_based(std::span<const Index> one_based) const {
  if (static_cast<int>(one_based.size()) != order()) throw DimensionError("multi-index has wrong length");
  std::vector<Index> out(one_based.begin(), one_based.end());
  for (int k = 0; k < order(); ++k) {
    if (out[k] < 1 || out[k] > dims_[k]) throw DimensionError("1-based index out of range");
    --out[k];
  }
  return out;
}

Shape Shape::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != order()) throw DimensionError("permutation has wrong length");
  std::vector<bool> seen(perm.size(), false);
  std::vector<Index> dims(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) {
    if (perm[p] < 0 || perm[p] >= order() || seen[perm[p]]) throw DimensionError("not a permutation");
    seen[perm[p]] = true;
    dims[p] = dims_[perm[p]];
  }
  return Shape(std::move(dims));
}

std::string Shape::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k) s += 'x';
    s += std::to_string(dims_[k]);
  }
  return s;
}

// SignTensor

SignTensor::SignTensor(Shape shape, Entries entries) : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (entries_.size() != shape_.size()) throw DimensionError("sign tensor entry count does not match shape");
  for (Index i = 0; i < entries_.size(); ++i) {
    if (entries_(i) != 1 && entries_(i) != -1) throw std::invalid_argument("sign tensor entries must be -1 or 1");
  }
}

SignTensor SignTensor::ones(Shape shape) {
  Entries e = Entries::Ones(shape.size());
  return SignTensor(std::move(shape), std::move(e));
}

ExactTensor SignTensor::exact() const { return ExactTensor(shape_, entries_.cast<std::int64_t>()); }

ComplexTensor SignTensor::to_complex() const {
  return ComplexTensor(shape_, entries_.cast<double>().cast<Complex>());
}

// UnimodularTensor

UnimodularTensor::UnimodularTensor(Shape shape, Eigen::VectorXd angles)
    : shape_(std::move(shape)), angles_(std::move(angles)) {
  if (angles_.size() != shape_.size()) throw DimensionError("unimodular tensor entry count does not match shape");
  for (Index i = 0; i < angles_.size(); ++i) angles_(i) = canonical_angle(angles_(i));
}

UnimodularTensor UnimodularTensor::from_complex(const ComplexTensor& t, double tol) {
  Eigen::VectorXd angles(t.data().size());
  for (Index i = 0; i < angles.size(); ++i) {
    const Complex z = t.data()(i);
    if (std::abs(std::abs(z) - 1.0) > tol) throw std::invalid_argument("entry is not unimodular");
    angles(i) = std::arg(z);
  }
  return UnimodularTensor(t.shape(), std::move(angles));
}

ComplexTensor UnimodularTensor::to_complex() const {
  Eigen::VectorXcd z(angles_.size());
  for (Index i = 0; i < z.size(); ++i) z(i) = std::polar(1.0, angles_(i));
  return ComplexTensor(shape_, std::move(z));
}

// AxisAssignment

AxisAssignment AxisAssignment::signs(std::vector<Eigen::VectorXd> vectors) {
  for (const auto& v : vectors) {
    for (Index i = 0; i < v.size(); ++i) {
      if (v(i) != 1.0 && v(i) != -1.0) throw std::invalid_argument("switch entries must be -1 or 1");
    }
  }
  AxisAssignment a;
  a.kind_ = AssignmentKind::Signs;
  a.vectors_ = std::move(vectors);
  return a;
}

AxisAssignment AxisAssignment::phases(std::vector<Eigen::VectorXd> vectors) {
  for (auto& v : vectors) {
    for (Index i = 0; i < v.size(); ++i) v(i) = canonical_angle(v(i));
  }
  AxisAssignment a;
  a.kind_ = AssignmentKind::Phases;
  a.vectors_ = std::move(vectors);
  return a;
}

AxisAssignment AxisAssignment::identity(const Shape& shape, AssignmentKind kind) {
  std::vector<Eigen::VectorXd> v;
  for (Index d : shape.dims()) {
    v.push_back(kind == AssignmentKind::Signs ? Eigen::VectorXd::Ones(d) : Eigen::VectorXd::Zero(d));
  }
  return kind == AssignmentKind::Signs ? signs(std::move(v)) : phases(std::move(v));
}

Eigen::VectorXcd AxisAssignment::complex_vector(int axis) const {
  const Eigen::VectorXd& v = vector(axis);
  if (kind_ == AssignmentKind::Signs) return v.cast<Complex>();
  Eigen::VectorXcd z(v.size());
  for (Index i = 0; i < v.size(); ++i) z(i) = std::polar(1.0, v(i));
  return z;
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> AxisAssignment::sign_vector(int axis) const {
  if (kind_ != AssignmentKind::Signs) throw std::invalid_argument("assignment holds phases, not signs");
  return vector(axis).cast<std::int64_t>();
}

void AxisAssignment::check_against(const Shape& shape, int skip_axis) const {
  if (axes() != shape.order()) {
    throw DimensionError("assignment has " + std::to_string(axes()) + " axis vectors, shape " + shape.to_string() +
                         " has " + std::to_string(shape.order()) + " axes");
  }
  for (int k = 0; k < axes(); ++k) {
    if (k != skip_axis && vectors_[k].size() != shape.dim(k)) {
      throw DimensionError("assignment vector " + std::to_string(k) + " has length " +
                           std::to_string(vectors_[k].size()) + ", expected " + std::to_string(shape.dim(k)));
    }
  }
}

bool operator==(const AxisAssignment& a, const AxisAssignment& b) {
  if (a.kind_ != b.kind_ || a.vectors_.size() != b.vectors_.size()) return false;
  for (std::size_t k = 0; k < a.vectors_.size(); ++k) {
    if (a.vectors_[k].size() != b.vectors_[k].size() || a.vectors_[k] != b.vectors_[k]) return false;
  }
  return true;
}

// Contractions

namespace {

std::vector<Eigen::VectorXcd> complex_vectors(const AxisAssignment& a, int skip_axis) {
  std::vector<Eigen::VectorXcd> out(a.axes());
  for (int k = 0; k < a.axes(); ++k) {
    if (k != skip_axis) out[k] = a.complex_vector(k);
  }
  return out;
}

std::vector<Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>> exact_vectors(const AxisAssignment& a, int skip_axis) {
  std::vector<Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>> out(a.axes());
  for (int k = 0; k < a.axes(); ++k) {
    if (k != skip_axis) out[k] = a.sign_vector(k);
  }
  return out;
}

void check_free_axis(const Shape& shape, int free_axis) {
  if (free_axis < 0 || free_axis >= shape.order()) throw DimensionError("free axis out of range");
}

}  // namespace

std::int64_t evaluate_exact(const SignTensor& tensor, const AxisAssignment& signs) {
  signs.check_against(tensor.shape());
  const auto x = exact_vectors(signs, -1);
  return detail::contract_all_but<std::int64_t>(tensor.exact(), x, -1)(0);
}

Complex evaluate(const SignTensor& tensor, const AxisAssignment& assignment) {
  if (assignment.kind() == AssignmentKind::Signs) {
    return Complex(static_cast<double>(evaluate_exact(tensor, assignment)), 0.0);
  }
  return evaluate(tensor.to_complex(), assignment);
}

Complex evaluate(const UnimodularTensor& tensor, const AxisAssignment& assignment) {
  return evaluate(tensor.to_complex(), assignment);
}

Complex evaluate(const ComplexTensor& tensor, const AxisAssignment& assignment) {
  assignment.check_against(tensor.shape());
  const auto x = complex_vectors(assignment, -1);
  return detail::contract_all_but<Complex>(tensor, x, -1)(0);
}

Eigen::VectorXcd partial_contract(const SignTensor& tensor, const AxisAssignment& assignment, int free_axis) {
  if (assignment.kind() == AssignmentKind::Signs) {
    return partial_contract_exact(tensor, assignment, free_axis).cast<double>().cast<Complex>();
  }
  return partial_contract(tensor.to_complex(), assignment, free_axis);
}

Eigen::VectorXcd partial_contract(const UnimodularTensor& tensor, const AxisAssignment& assignment, int free_axis) {
  return partial_contract(tensor.to_complex(), assignment, free_axis);
}

Eigen::VectorXcd partial_contract(const ComplexTensor& tensor, const AxisAssignment& assignment, int free_axis) {
  check_free_axis(tensor.shape(), free_axis);
  assignment.check_against(tensor.shape(), free_axis);
  const auto x = complex_vectors(assignment, free_axis);
  return detail::contract_all_but<Complex>(tensor, x, free_axis);
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> partial_contract_exact(const SignTensor& tensor,
                                                                     const AxisAssignment& signs, int free_axis) {
  check_free_axis(tensor.shape(), free_axis);
  signs.check_against(tensor.shape(), free_axis);
  const auto x = exact_vectors(signs, free_axis);
  return detail::contract_all_but<std::int64_t>(tensor.exact(), x, free_axis);
}

Eigen::VectorXd slice_l2_profile(const ComplexTensor& tensor, int axis) {
  const Shape& shape = tensor.shape();
  check_free_axis(shape, axis);
  const Index n = shape.dim(axis);
  const Index stride = shape.stride(axis);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(n);
  for (Index flat = 0; flat < shape.size(); ++flat) sq((flat / stride) % n) += std::norm(tensor.data()(flat));
  return sq.cwiseSqrt();
}

Eigen::VectorXd slice_l2_profile(const SignTensor& tensor, int axis) {
  return slice_l2_profile(tensor.to_complex(), axis);
}

Eigen::VectorXd slice_l2_profile(const UnimodularTensor& tensor, int axis) {
  return slice_l2_profile(tensor.to_complex(), axis);
}

}  // namespace gbg
