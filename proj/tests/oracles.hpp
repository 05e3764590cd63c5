#pragma once

// Independent reference implementations used by the tests. Everything here is
// deliberately naive: direct loops over coordinates, no shared kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "gbg/tensor.hpp"

namespace oracle {

using gbg::Index;

inline std::vector<Index> coords_of(const std::vector<Index>& dims, Index flat) {
  std::vector<Index> c(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    c[k] = flat % dims[k];
    flat /= dims[k];
  }
  return c;
}

inline Index product(const std::vector<Index>& dims) {
  Index n = 1;
  for (Index d : dims) n *= d;
  return n;
}

/// Σ a_j Π_k x^{(k)}_{j_k} with switches given as ±1 integers.
inline std::int64_t signed_sum(const std::vector<Index>& dims, const std::vector<int>& a,
                               const std::vector<std::vector<int>>& x) {
  std::int64_t s = 0;
  for (Index flat = 0; flat < static_cast<Index>(a.size()); ++flat) {
    const auto c = coords_of(dims, flat);
    int w = a[flat];
    for (std::size_t k = 0; k < dims.size(); ++k) w *= x[k][c[k]];
    s += w;
  }
  return s;
}

/// Switch vectors decoded from the bits of `mask`, axis 0 first.
inline std::vector<std::vector<int>> switches_from_mask(const std::vector<Index>& dims, std::uint64_t mask) {
  std::vector<std::vector<int>> x(dims.size());
  int bit = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    for (Index i = 0; i < dims[k]; ++i, ++bit) x[k].push_back((mask >> bit) & 1 ? -1 : 1);
  }
  return x;
}

/// max over all 2^{Σ n_k} switch plans of |Σ a x...x|.
inline std::int64_t best_imbalance(const std::vector<Index>& dims, const std::vector<int>& a) {
  Index bits = 0;
  for (Index d : dims) bits += d;
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    const std::int64_t s = signed_sum(dims, a, switches_from_mask(dims, mask));
    best = std::max(best, s < 0 ? -s : s);
  }
  return best;
}

/// min over all 2^N patterns of best_imbalance.
inline std::int64_t worst_value(const std::vector<Index>& dims) {
  const Index n = product(dims);
  std::int64_t worst = std::numeric_limits<std::int64_t>::max();
  std::vector<int> a(n);
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
    for (Index i = 0; i < n; ++i) a[i] = (p >> i) & 1 ? -1 : 1;
    worst = std::min(worst, best_imbalance(dims, a));
  }
  return worst;
}

inline std::vector<int> signs_of(const gbg::SignTensor& t) {
  std::vector<int> a(t.entries().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = t.entries()(static_cast<Index>(i));
  return a;
}

/// Σ a_j Π_k z^{(k)}_{j_k} for complex inputs.
inline std::complex<double> multilinear(const std::vector<Index>& dims, const std::vector<std::complex<double>>& a,
                                        const std::vector<std::vector<std::complex<double>>>& z) {
  std::complex<double> s = 0.0;
  for (Index flat = 0; flat < static_cast<Index>(a.size()); ++flat) {
    const auto c = coords_of(dims, flat);
    std::complex<double> w = a[flat];
    for (std::size_t k = 0; k < dims.size(); ++k) w *= z[k][c[k]];
    s += w;
  }
  return s;
}

inline std::vector<std::complex<double>> entries_of(const gbg::ComplexTensor& t) {
  return {t.data().data(), t.data().data() + t.data().size()};
}

/// Brute force over phases 2πg/G on every coordinate of every axis.
inline double torus_grid_max(const gbg::ComplexTensor& t, int grid) {
  const auto dims = t.shape().dims();
  const auto a = entries_of(t);
  Index coords = 0;
  for (Index d : dims) coords += d;
  std::vector<int> digit(coords, 0);
  double best = 0.0;
  while (true) {
    std::vector<std::vector<std::complex<double>>> z(dims.size());
    Index pos = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      for (Index i = 0; i < dims[k]; ++i, ++pos) {
        z[k].push_back(std::polar(1.0, 2.0 * std::numbers::pi * digit[pos] / grid));
      }
    }
    best = std::max(best, std::abs(multilinear(dims, a, z)));
    Index p = 0;
    while (p < coords && ++digit[p] == grid) digit[p++] = 0;
    if (p == coords) break;
  }
  return best;
}

/// (1/2π) ∫ f(t) dt over one period, rectangle rule.
template <typename F>
double periodic_mean(F f, int panels = 200000) {
  const double h = 2.0 * std::numbers::pi / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) s += f(i * h);
  return s / panels;
}

inline gbg::SignTensor random_signs(const gbg::Shape& shape, std::mt19937_64& g) {
  gbg::SignTensor::Entries e(shape.size());
  for (Index i = 0; i < e.size(); ++i) e(i) = static_cast<std::int8_t>(g() & 1 ? 1 : -1);
  return gbg::SignTensor(shape, std::move(e));
}

inline gbg::UnimodularTensor random_unimodular(const gbg::Shape& shape, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd angles(shape.size());
  for (Index i = 0; i < angles.size(); ++i) angles(i) = u(g);
  return gbg::UnimodularTensor(shape, std::move(angles));
}

inline gbg::ComplexTensor random_complex(const gbg::Shape& shape, std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Eigen::VectorXcd v(shape.size());
  for (Index i = 0; i < v.size(); ++i) v(i) = {n(g), n(g)};
  return gbg::ComplexTensor(shape, std::move(v));
}

/// Random shape with `order` axes and dims in [1, max_dim].
inline gbg::Shape random_shape(int order, Index max_dim, std::mt19937_64& g) {
  std::vector<Index> dims;
  for (int k = 0; k < order; ++k) dims.push_back(1 + static_cast<Index>(g() % max_dim));
  return gbg::Shape(dims);
}

inline gbg::AxisAssignment random_phases(const gbg::Shape& shape, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<Eigen::VectorXd> v;
  for (Index d : shape.dims()) {
    Eigen::VectorXd p(d);
    for (Index i = 0; i < d; ++i) p(i) = u(g);
    v.push_back(p);
  }
  return gbg::AxisAssignment::phases(v);
}

inline gbg::AxisAssignment random_switches(const gbg::Shape& shape, std::mt19937_64& g) {
  std::vector<Eigen::VectorXd> v;
  for (Index d : shape.dims()) {
    Eigen::VectorXd p(d);
    for (Index i = 0; i < d; ++i) p(i) = g() & 1 ? 1.0 : -1.0;
    v.push_back(p);
  }
  return gbg::AxisAssignment::signs(v);
}

inline std::vector<std::vector<int>> int_switches(const gbg::AxisAssignment& a) {
  std::vector<std::vector<int>> x;
  for (const auto& v : a.vectors()) {
    std::vector<int> xi;
    for (Index i = 0; i < v.size(); ++i) xi.push_back(v(i) < 0 ? -1 : 1);
    x.push_back(xi);
  }
  return x;
}

inline std::vector<std::vector<std::complex<double>>> complex_inputs(const gbg::AxisAssignment& a) {
  std::vector<std::vector<std::complex<double>>> z;
  for (const auto& v : a.vectors()) {
    std::vector<std::complex<double>> zi;
    for (Index i = 0; i < v.size(); ++i) {
      zi.push_back(a.kind() == gbg::AssignmentKind::Signs ? std::complex<double>(v(i), 0.0) : std::polar(1.0, v(i)));
    }
    z.push_back(zi);
  }
  return z;
}

}  // namespace oracle
