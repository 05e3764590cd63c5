#include "gbg/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace gbg {

namespace {

double turn_to_angle(std::uint64_t numerator, std::uint64_t denominator) {
  return canonical_angle(kTwoPi * (static_cast<double>(numerator) / static_cast<double>(denominator)));
}

// lcm of the chain moduli if it stays well inside 64 bits.
std::optional<std::uint64_t> common_modulus(std::span<const Index> moduli) {
  std::uint64_t l = 1;
  for (Index n : moduli) {
    const auto u = static_cast<std::uint64_t>(n);
    std::uint64_t next;
    if (__builtin_mul_overflow(l / std::gcd(l, u), u, &next) || next > (std::uint64_t{1} << 62)) return std::nullopt;
    l = next;
  }
  return l;
}

}  // namespace

FourierMatrix fourier_matrix(Index n) {
  if (n < 1) throw std::invalid_argument("fourier_matrix needs n >= 1");
  FourierMatrix f;
  f.n = n;
  f.angles.resize(n, n);
  f.entries.resize(n, n);
  for (Index r = 1; r <= n; ++r) {
    for (Index s = 1; s <= n; ++s) {
      const double angle = turn_to_angle(static_cast<std::uint64_t>((r * s) % n), static_cast<std::uint64_t>(n));
      f.angles(r - 1, s - 1) = angle;
      f.entries(r - 1, s - 1) = std::polar(1.0, angle);
    }
  }
  return f;
}

double verify_orthogonality(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("orthogonality check needs a square matrix");
  const Index n = matrix.rows();
  const Eigen::MatrixXcd gram = matrix * matrix.adjoint();
  return (gram - static_cast<double>(n) * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

UnimodularTensor extremal_tensor(const Shape& shape) {
  const int m = shape.order();
  if (m < 2) throw DimensionError("extremal_tensor needs at least two axes");

  std::vector<int> sorted_axes(m);
  std::iota(sorted_axes.begin(), sorted_axes.end(), 0);
  std::stable_sort(sorted_axes.begin(), sorted_axes.end(),
                   [&](int a, int b) { return shape.dim(a) < shape.dim(b); });
  const Shape sorted = shape.permuted(sorted_axes);
  const std::vector<Index>& s = sorted.dims();
  const std::vector<Index> moduli(s.begin() + 1, s.end());
  const std::optional<std::uint64_t> modulus = common_modulus(moduli);

  Eigen::VectorXd angles(sorted.size());
  std::vector<Index> i(m, 0);
  for (Index flat = 0; flat < sorted.size(); ++flat) {
    // Angle of c = Σ_k 2π ((i_k i_{k+1}) mod s_{k+1}) / s_{k+1}, with 1-based i.
    if (modulus) {
      std::uint64_t num = 0;
      for (int k = 0; k + 1 < m; ++k) {
        const auto n = static_cast<std::uint64_t>(s[k + 1]);
        const auto rs = static_cast<std::uint64_t>(((i[k] + 1) * (i[k + 1] + 1)) % s[k + 1]);
        num = (num + rs * (*modulus / n)) % *modulus;
      }
      angles(flat) = turn_to_angle(num, *modulus);
    } else {
      long double turns = 0.0L;
      for (int k = 0; k + 1 < m; ++k) {
        turns += static_cast<long double>(((i[k] + 1) * (i[k + 1] + 1)) % s[k + 1]) / s[k + 1];
      }
      turns -= std::floor(turns);
      angles(flat) = canonical_angle(static_cast<double>(kTwoPi * turns));
    }
    for (int k = m - 1; k >= 0; --k) {
      if (++i[k] < s[k]) break;
      i[k] = 0;
    }
  }

  // Axis q of the caller's shape sits at sorted position position[q].
  std::vector<int> position(m);
  for (int p = 0; p < m; ++p) position[sorted_axes[p]] = p;
  const DenseTensor<double> in_sorted(sorted, std::move(angles));
  DenseTensor<double> restored = in_sorted.permuted(position);
  return UnimodularTensor(restored.shape(), restored.data());
}

}  // namespace gbg
