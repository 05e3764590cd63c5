#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gbg/constructions.hpp"
#include "gbg/torus_norm.hpp"
#include "oracles.hpp"

using namespace gbg;

namespace {

// Entry of the chained Fourier tensor from its defining product, computed
// with complex multiplication rather than exact angle arithmetic.
Complex chained_entry(const std::vector<Index>& sorted_dims, const std::vector<Index>& one_based) {
  Complex c = 1.0;
  for (std::size_t k = 0; k + 1 < sorted_dims.size(); ++k) {
    const double n = static_cast<double>(sorted_dims[k + 1]);
    c *= std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(one_based[k] * one_based[k + 1]) / n);
  }
  return c;
}

bool keeps_equal_dims_ordered(const Shape& s, const std::vector<int>& perm) {
  for (std::size_t p = 0; p < perm.size(); ++p) {
    for (std::size_t q = p + 1; q < perm.size(); ++q) {
      if (s.dim(perm[p]) == s.dim(perm[q]) && perm[p] > perm[q]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Fourier matrices") {
  for (Index n = 1; n <= 16; ++n) {
    const FourierMatrix f = fourier_matrix(n);
    CHECK(verify_orthogonality(f.entries) <= 1e-9);
    for (Index r = 0; r < n; ++r) {
      for (Index s = 0; s < n; ++s) {
        const Complex want = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((r + 1) * (s + 1)) / n);
        CHECK(std::abs(f.entries(r, s) - want) <= 1e-12);
        CHECK(f.angles(r, s) >= 0.0);
        CHECK(f.angles(r, s) < kTwoPi);
      }
    }
  }
  const FourierMatrix f2 = fourier_matrix(2);
  CHECK(std::abs(f2.entries(0, 0) - Complex(-1.0, 0.0)) <= 1e-15);
  CHECK(f2.entries(1, 1) == Complex(1.0, 0.0));
  CHECK(f2.angles(0, 0) == std::numbers::pi);
  CHECK(f2.angles(0, 1) == 0.0);
  CHECK_THROWS_AS(verify_orthogonality(Eigen::MatrixXcd::Ones(2, 3)), DimensionError);
  CHECK(verify_orthogonality(Eigen::MatrixXcd::Ones(2, 2)) == doctest::Approx(2.0));
  CHECK_THROWS(fourier_matrix(0));
}

TEST_CASE("extremal tensors are unimodular and match the chained product") {
  std::mt19937_64 g(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Shape s = oracle::random_shape(2 + static_cast<int>(g() % 3), 8, g);
    const UnimodularTensor t = extremal_tensor(s);
    REQUIRE(t.shape() == s);
    const ComplexTensor c = t.to_complex();
    CHECK((c.data().cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);

    std::vector<int> order(s.order());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.dim(a) < s.dim(b); });
    std::vector<Index> sorted;
    for (int a : order) sorted.push_back(s.dim(a));
    for (Index flat = 0; flat < s.size(); ++flat) {
      const auto coords = s.coords(flat);
      std::vector<Index> one_based;
      for (int a : order) one_based.push_back(coords[a] + 1);
      CHECK(std::abs(c.data()(flat) - chained_entry(sorted, one_based)) <= 1e-9);
    }
  }
}

TEST_CASE("extremal tensor of (2,3) and its transpose") {
  const UnimodularTensor a = extremal_tensor(Shape{2, 3});
  const UnimodularTensor b = extremal_tensor(Shape{3, 2});
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) {
      const std::vector<Index> ij{i, j};
      const std::vector<Index> ji{j, i};
      CHECK(a.angles()(a.shape().flat_index(ij)) == b.angles()(b.shape().flat_index(ji)));
      CHECK(std::abs(a.at(ij) - std::polar(1.0, kTwoPi * static_cast<double>(((i + 1) * (j + 1)) % 3) / 3.0)) <=
            1e-12);
    }
  }
  CHECK_THROWS_AS(extremal_tensor(Shape{4}), DimensionError);
}

TEST_CASE("extremal tensors commute with axis permutations") {
  std::mt19937_64 g(42);
  int checked = 0;
  while (checked < 200) {
    const Shape s = oracle::random_shape(2 + static_cast<int>(g() % 3), 6, g);
    std::vector<int> perm(s.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    if (!keeps_equal_dims_ordered(s, perm)) continue;
    ++checked;
    const UnimodularTensor direct = extremal_tensor(s.permuted(perm));
    const DenseTensor<double> angles(s, extremal_tensor(s).angles());
    const DenseTensor<double> moved = angles.permuted(perm);
    CHECK(direct.shape() == moved.shape());
    CHECK(direct.angles() == moved.data());
  }
}

TEST_CASE("extremal tensors sit at the torus upper bound scale") {
  for (const Shape& s : {Shape{2, 2}, Shape{3, 3}, Shape{2, 3}, Shape{2, 2, 2}, Shape{3, 4}}) {
    const NormEstimate e = alternating_ascent(extremal_tensor(s));
    const double normalizer = std::sqrt(static_cast<double>(s.size() * s.max_dim()));
    CAPTURE(s.to_string());
    CHECK(e.value <= normalizer * (1.0 + 1e-9));
    CHECK(e.value >= unimodular_lower_certificate(s));
  }
}
