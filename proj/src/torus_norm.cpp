#include "gbg/torus_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbg/rng.hpp"

namespace gbg {

void AscentConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
}

namespace {

AxisAssignment as_phases(const AxisAssignment& a) {
  if (a.kind() == AssignmentKind::Phases) return a;
  std::vector<Eigen::VectorXd> v = a.vectors();
  for (auto& x : v) x = x.unaryExpr([](double s) { return s < 0 ? std::numbers::pi : 0.0; });
  return AxisAssignment::phases(std::move(v));
}

}  // namespace

AscentRun ascend_from(const ComplexTensor& tensor, const AxisAssignment& start, double tol, int max_sweeps,
                      std::vector<double>* trace) {
  const Shape& shape = tensor.shape();
  start.check_against(shape);
  const int m = shape.order();
  std::vector<Eigen::VectorXd> phases = as_phases(start).vectors();
  std::vector<Eigen::VectorXcd> z(m);
  for (int k = 0; k < m; ++k) z[k] = phases[k].unaryExpr([](double t) { return std::polar(1.0, t); });

  double value = std::abs(detail::contract_all_but<Complex>(tensor, z, -1)(0));
  if (trace) trace->push_back(value);

  AscentRun run;
  while (run.sweeps < max_sweeps) {
    const double before = value;
    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXcd b = detail::contract_all_but<Complex>(tensor, z, k);
      for (Index j = 0; j < b.size(); ++j) {
        if (b(j) == Complex(0.0, 0.0)) continue;
        phases[k](j) = canonical_angle(-std::arg(b(j)));
        z[k](j) = std::polar(1.0, phases[k](j));
      }
      value = b.cwiseAbs().sum();
      if (trace) trace->push_back(value);
    }
    ++run.sweeps;
    if (value - before <= tol * value) {
      run.converged = true;
      break;
    }
  }
  run.value = std::abs(detail::contract_all_but<Complex>(tensor, z, -1)(0));
  run.phases = AxisAssignment::phases(std::move(phases));
  return run;
}

NormEstimate alternating_ascent(const ComplexTensor& tensor, const AscentConfig& cfg) {
  cfg.validate();
  const Shape& shape = tensor.shape();
  NormEstimate best;
  best.value = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    AxisAssignment start = AxisAssignment::identity(shape, AssignmentKind::Phases);
    if (r > 0) {
      auto g = make_stream(cfg.seed, static_cast<std::uint64_t>(r));
      std::vector<Eigen::VectorXd> v = start.vectors();
      for (auto& x : v) {
        for (Index i = 0; i < x.size(); ++i) x(i) = uniform_angle(g);
      }
      start = AxisAssignment::phases(std::move(v));
    }
    AscentRun run = ascend_from(tensor, start, cfg.tol, cfg.max_sweeps);
    if (run.value > best.value) {
      best.value = run.value;
      best.witness = std::move(run.phases);
      best.sweeps = run.sweeps;
      best.converged = run.converged;
    }
  }
  best.restarts_used = cfg.restarts;
  return best;
}

NormEstimate alternating_ascent(const UnimodularTensor& tensor, const AscentConfig& cfg) {
  return alternating_ascent(tensor.to_complex(), cfg);
}

NormEstimate alternating_ascent(const SignTensor& tensor, const AscentConfig& cfg) {
  return alternating_ascent(tensor.to_complex(), cfg);
}

namespace {

class PhaseGrid {
 public:
  PhaseGrid(const ComplexTensor& tensor, int grid) : tensor_(tensor), grid_(grid) {
    roots_.resize(grid);
    for (int g = 0; g < grid; ++g) roots_[g] = std::polar(1.0, angle(g));
    const int m = tensor.shape().order();
    digits_.resize(std::max(m - 1, 0));
    best_digits_ = digits_;
    for (int p = 0; p + 1 < m; ++p) {
      digits_[p].assign(tensor.shape().dim(p), 0);
    }
  }

  double angle(int g) const { return kTwoPi * (static_cast<double>(g) / static_cast<double>(grid_)); }

  void run() { descend(0, tensor_.data(), tensor_.shape().dims()); }

  const std::vector<std::vector<int>>& best_digits() const { return best_digits_; }

 private:
  void descend(int p, const Eigen::VectorXcd& v, const std::vector<Index>& dims) {
    if (p + 1 == tensor_.shape().order()) {
      const double value = v.cwiseAbs().sum();
      if (value > best_) {
        best_ = value;
        best_digits_ = digits_;
      }
      return;
    }
    std::vector<int>& d = digits_[p];
    const std::size_t first = p == 0 ? 1 : 0;
    Eigen::VectorXcd x(static_cast<Index>(d.size()));
    while (true) {
      for (std::size_t i = 0; i < d.size(); ++i) x(static_cast<Index>(i)) = roots_[d[i]];
      std::vector<Index> rest = dims;
      descend(p + 1, detail::contract_axis<Complex>(v, rest, 0, x), rest);
      bool wrapped = true;
      for (std::size_t i = d.size(); i > first && wrapped;) {
        --i;
        if (++d[i] < grid_) {
          wrapped = false;
        } else {
          d[i] = 0;
        }
      }
      if (wrapped) break;
    }
  }

  const ComplexTensor& tensor_;
  int grid_;
  std::vector<Complex> roots_;
  std::vector<std::vector<int>> digits_;
  std::vector<std::vector<int>> best_digits_;
  double best_ = -1.0;
};

}  // namespace

NormEstimate phase_grid_lower_bound(const ComplexTensor& tensor, int grid, int bit_cap) {
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
  const Shape& shape = tensor.shape();
  const int m = shape.order();
  Index enumerated = 0;
  for (int p = 0; p + 1 < m; ++p) enumerated += shape.dim(p);
  if (static_cast<double>(enumerated) * std::log2(static_cast<double>(grid)) > bit_cap + 1e-9) {
    throw CapacityError("phase grid " + std::to_string(grid) + "^" + std::to_string(enumerated) + " exceeds 2^" +
                        std::to_string(bit_cap) + " points");
  }
  PhaseGrid search(tensor, grid);
  search.run();

  std::vector<Eigen::VectorXd> phases(m);
  std::vector<Eigen::VectorXcd> z(m);
  for (int p = 0; p + 1 < m; ++p) {
    const auto& d = search.best_digits()[p];
    phases[p].resize(shape.dim(p));
    for (Index i = 0; i < shape.dim(p); ++i) phases[p](i) = search.angle(d[i]);
    z[p] = phases[p].unaryExpr([](double t) { return std::polar(1.0, t); });
  }
  const Eigen::VectorXcd b = detail::contract_all_but<Complex>(tensor, z, m - 1);
  phases[m - 1].resize(b.size());
  for (Index j = 0; j < b.size(); ++j) {
    phases[m - 1](j) = b(j) == Complex(0.0, 0.0) ? 0.0 : canonical_angle(-std::arg(b(j)));
  }

  NormEstimate est;
  est.witness = AxisAssignment::phases(std::move(phases));
  est.value = std::abs(evaluate(tensor, est.witness));
  est.restarts_used = 1;
  est.converged = true;
  return est;
}

NormEstimate phase_grid_lower_bound(const UnimodularTensor& tensor, int grid, int bit_cap) {
  return phase_grid_lower_bound(tensor.to_complex(), grid, bit_cap);
}

NormEstimate phase_grid_lower_bound(const SignTensor& tensor, int grid, int bit_cap) {
  return phase_grid_lower_bound(tensor.to_complex(), grid, bit_cap);
}

namespace {

class Welford {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  MeanEstimate result() const {
    MeanEstimate e;
    e.mean = mean_;
    e.samples = n_;
    e.half_width_95 = n_ > 1 ? 1.96 * std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_)) : 0.0;
    return e;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void check_samples(std::int64_t samples) {
  if (samples < 100) throw std::invalid_argument("steinhaus_average needs at least 100 samples");
}

}  // namespace

MeanEstimate steinhaus_average(const ComplexTensor& coeffs, std::span<const int> random_axes, std::int64_t samples,
                               std::uint64_t seed) {
  check_samples(samples);
  const Shape& shape = coeffs.shape();
  const int m = shape.order();
  std::vector<bool> is_random(m, false);
  for (int k : random_axes) {
    if (k < 0 || k >= m || is_random[k]) throw DimensionError("random axes must be distinct axes of the tensor");
    is_random[k] = true;
  }

  // Contract the fixed axes against ones, highest axis first so indices stay valid.
  std::vector<Index> dims = shape.dims();
  Eigen::VectorXcd effective = coeffs.data();
  for (int k = m - 1; k >= 0; --k) {
    if (!is_random[k]) effective = detail::contract_axis<Complex>(effective, dims, k, Eigen::VectorXcd::Ones(dims[k]));
  }

  Welford acc;
  if (dims.empty()) {
    const double v = std::abs(effective(0));
    for (std::int64_t s = 0; s < samples; ++s) acc.add(v);
    return acc.result();
  }
  auto g = make_stream(seed, 0);
  const int r = static_cast<int>(dims.size());
  std::vector<Eigen::VectorXcd> z(r);
  for (int k = 0; k < r; ++k) z[k].resize(dims[k]);
  const ComplexTensor reduced(Shape(dims), effective);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (auto& x : z) {
      for (Index i = 0; i < x.size(); ++i) x(i) = std::polar(1.0, uniform_angle(g));
    }
    acc.add(std::abs(detail::contract_all_but<Complex>(reduced, z, -1)(0)));
  }
  return acc.result();
}

MeanEstimate steinhaus_average(const Eigen::VectorXcd& coeffs, std::int64_t samples, std::uint64_t seed) {
  const std::vector<int> axis{0};
  return steinhaus_average(ComplexTensor(Shape{coeffs.size()}, coeffs), axis, samples, seed);
}

double rademacher_average_exact(const Eigen::VectorXd& coeffs) {
  const Index n = coeffs.size();
  if (n > 24) throw CapacityError("rademacher_average_exact supports at most 24 coefficients");
  if (n == 0) return 0.0;
  // |Σ ε a| is even in ε, so pin ε_0 = +1 and split the rest in two halves.
  const Index split = 1 + (n - 1) / 2;
  auto signed_sums = [&](Index from, Index to, double seed_value) {
    std::vector<double> sums{seed_value};
    for (Index j = from; j < to; ++j) {
      const std::size_t size = sums.size();
      sums.resize(2 * size);
      for (std::size_t i = 0; i < size; ++i) {
        sums[size + i] = sums[i] - coeffs(j);
        sums[i] += coeffs(j);
      }
    }
    return sums;
  };
  const std::vector<double> low = signed_sums(1, split, coeffs(0));
  const std::vector<double> high = signed_sums(split, n, 0.0);
  long double total = 0.0L;
  for (double h : high) {
    double inner = 0.0;
    for (double l : low) inner += std::abs(h + l);
    total += inner;
  }
  return static_cast<double>(total / std::ldexp(1.0L, static_cast<int>(n - 1)));
}

double steinhaus_constant() { return std::sqrt(std::numbers::pi) / 2.0; }

double unimodular_lower_certificate(const Shape& shape) {
  const double n_max = static_cast<double>(shape.max_dim());
  const double others = static_cast<double>(shape.size()) / n_max;
  return std::pow(steinhaus_constant(), shape.order() - 1) * n_max * std::sqrt(others);
}

}  // namespace gbg
