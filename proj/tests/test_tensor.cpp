#include <doctest.h>

#include "gbg/tensor.hpp"
#include "oracles.hpp"

using namespace gbg;

TEST_CASE("shape indexing round-trips") {
  const Shape s{2, 3, 4};
  CHECK(s.order() == 3);
  CHECK(s.size() == 24);
  CHECK(s.max_dim() == 4);
  CHECK(s.size_without(1) == 8);
  CHECK(s.stride(0) == 12);
  CHECK(s.stride(2) == 1);
  CHECK(s.to_string() == "2x3x4");
  for (Index flat = 0; flat < s.size(); ++flat) {
    const auto c = s.coords(flat);
    CHECK(c == oracle::coords_of(s.dims(), flat));
    CHECK(s.flat_index(c) == flat);
  }
  const std::vector<Index> one{2, 3, 4};
  CHECK(s.from_one_based(one) == std::vector<Index>{1, 2, 3});
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(Shape({0, 2}), DimensionError);
  CHECK_THROWS_AS(Shape({-1}), DimensionError);
  CHECK_THROWS_AS(Shape({Index{1} << 40, Index{1} << 40}), DimensionError);
  const Shape s{2, 3};
  CHECK_THROWS_AS(s.dim(2), DimensionError);
  const std::vector<Index> out{3, 1};
  CHECK_THROWS_AS(s.from_one_based(out), DimensionError);
  const std::vector<Index> zero{0, 1};
  CHECK_THROWS_AS(s.from_one_based(zero), DimensionError);
}

TEST_CASE("canonical angles") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(!std::signbit(canonical_angle(-0.0)));
  CHECK(canonical_angle(kTwoPi) == 0.0);
  CHECK(canonical_angle(-1e-300) < kTwoPi);
  CHECK(canonical_angle(-std::numbers::pi / 2) == doctest::Approx(1.5 * std::numbers::pi));
  CHECK_THROWS_AS(canonical_angle(std::nan("")), std::invalid_argument);
}

TEST_CASE("permuted tensors move entries with their coordinates") {
  std::mt19937_64 g(3);
  const ComplexTensor t = oracle::random_complex(Shape{2, 3, 4}, g);
  const std::vector<int> perm{2, 0, 1};
  const ComplexTensor p = t.permuted(perm);
  CHECK(p.shape() == Shape{4, 2, 3});
  for (Index flat = 0; flat < t.shape().size(); ++flat) {
    const auto c = t.shape().coords(flat);
    const std::vector<Index> pc{c[2], c[0], c[1]};
    CHECK(p(pc) == t.data()(flat));
  }
  const std::vector<int> inverse{1, 2, 0};
  CHECK(p.permuted(inverse).data() == t.data());
}

TEST_CASE("sign and unimodular tensors") {
  const SignTensor ones = SignTensor::ones(Shape{2, 2});
  CHECK(ones.entries().cast<int>().sum() == 4);
  SignTensor::Entries bad(2);
  bad << 1, 0;
  CHECK_THROWS(SignTensor(Shape{2}, bad));
  CHECK_THROWS_AS(SignTensor(Shape{3}, SignTensor::Entries::Ones(2)), DimensionError);

  Eigen::VectorXcd z(2);
  z << Complex(0, 1), Complex(-1, 0);
  const auto u = UnimodularTensor::from_complex(ComplexTensor(Shape{2}, z));
  CHECK(u.angles()(0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(u.angles()(1) == doctest::Approx(std::numbers::pi));
  z(1) = 1.1;
  CHECK_THROWS_AS(UnimodularTensor::from_complex(ComplexTensor(Shape{2}, z)), std::invalid_argument);
}

TEST_CASE("assignment validation") {
  const Shape s{2, 3};
  const auto id = AxisAssignment::identity(s, AssignmentKind::Signs);
  CHECK_NOTHROW(id.check_against(s));
  CHECK_THROWS_AS(id.check_against(Shape{2, 4}), DimensionError);
  CHECK_NOTHROW(id.check_against(Shape{2, 4}, 1));
  CHECK_THROWS_AS(id.check_against(Shape{2, 3, 1}), DimensionError);
  CHECK_THROWS(AxisAssignment::signs({Eigen::VectorXd::Constant(2, 0.5)}));
  CHECK(!(id == AxisAssignment::identity(Shape{2, 4}, AssignmentKind::Signs)));
  CHECK(!(id == AxisAssignment::identity(s, AssignmentKind::Phases)));
}

TEST_CASE("evaluation matches the naive multilinear sum") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Shape s = oracle::random_shape(1 + static_cast<int>(g() % 4), 4, g);
    const SignTensor a = oracle::random_signs(s, g);
    const AxisAssignment x = oracle::random_switches(s, g);
    const std::int64_t want = oracle::signed_sum(s.dims(), oracle::signs_of(a), oracle::int_switches(x));
    CHECK(evaluate_exact(a, x) == want);
    CHECK(evaluate(a, x).real() == doctest::Approx(static_cast<double>(want)));

    const ComplexTensor c = oracle::random_complex(s, g);
    const AxisAssignment p = oracle::random_phases(s, g);
    const Complex z = evaluate(c, p);
    const Complex w = oracle::multilinear(s.dims(), oracle::entries_of(c), oracle::complex_inputs(p));
    CHECK(std::abs(z - w) <= 1e-10 * (1.0 + std::abs(w)));
  }
}

TEST_CASE("partial contraction is the coefficient vector of the free axis") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Shape s = oracle::random_shape(2 + static_cast<int>(g() % 3), 4, g);
    const ComplexTensor c = oracle::random_complex(s, g);
    const AxisAssignment p = oracle::random_phases(s, g);
    const int axis = static_cast<int>(g() % s.order());
    const Eigen::VectorXcd b = partial_contract(c, p, axis);
    REQUIRE(b.size() == s.dim(axis));
    const Complex via_b = (b.array() * p.complex_vector(axis).array()).sum();
    CHECK(std::abs(via_b - evaluate(c, p)) <= 1e-10 * (1.0 + std::abs(via_b)));

    const SignTensor a = oracle::random_signs(s, g);
    const AxisAssignment x = oracle::random_switches(s, g);
    const auto bx = partial_contract_exact(a, x, axis);
    CHECK(bx.dot(x.sign_vector(axis)) == evaluate_exact(a, x));
  }
}

TEST_CASE("slice profiles") {
  std::mt19937_64 g(13);
  const SignTensor a = oracle::random_signs(Shape{2, 3, 5}, g);
  const Eigen::VectorXd p = slice_l2_profile(a, 1);
  REQUIRE(p.size() == 3);
  for (Index j = 0; j < 3; ++j) CHECK(p(j) == doctest::Approx(std::sqrt(10.0)));

  const ComplexTensor c = oracle::random_complex(Shape{3, 4}, g);
  const Eigen::VectorXd rows = slice_l2_profile(c, 0);
  for (Index i = 0; i < 3; ++i) {
    double s = 0.0;
    for (Index j = 0; j < 4; ++j) s += std::norm(c.data()(i * 4 + j));
    CHECK(rows(i) == doctest::Approx(std::sqrt(s)));
  }
  CHECK(rows.squaredNorm() == doctest::Approx(c.data().squaredNorm()));
}
