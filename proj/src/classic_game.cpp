#include "gbg/classic_game.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "gbg/rng.hpp"
#include "parallel.hpp"

namespace gbg {

namespace {

// Exhaustive switch enumeration prepared for one shape.
//
// Axes are permuted so that the largest axis comes last; the tensor is then
// viewed as a rows x cols matrix, cols = n_last. Every switch on the first
// m-1 axes is one bit; a row's weight is the product of the switches on its
// coordinates, and b_j = Σ_r w_r a_{rj}. Flipping one bit negates the weight
// of the rows in that slice and updates b incrementally.
class ImbalanceKernel {
 public:
  struct Best {
    std::int64_t value = -1;
    std::uint64_t state = 0;
  };

  ImbalanceKernel(const Shape& shape, int bit_cap) : shape_(shape) {
    const int m = shape.order();
    const auto& dims = shape.dims();
    const int last = static_cast<int>(std::max_element(dims.begin(), dims.end()) - dims.begin());
    for (int k = 0; k < m; ++k) {
      if (k != last) perm_.push_back(k);
    }
    perm_.push_back(last);
    const Shape permuted = shape.permuted(perm_);

    cols_ = permuted.dim(m - 1);
    rows_ = permuted.size() / cols_;
    gather_.resize(permuted.size());
    {
      std::vector<Index> coords(m, 0);
      for (Index flat = 0; flat < permuted.size(); ++flat) {
        Index src = 0;
        for (int p = 0; p < m; ++p) src += coords[p] * shape.stride(perm_[p]);
        gather_[flat] = src;
        for (int p = m - 1; p >= 0; --p) {
          if (++coords[p] < permuted.dim(p)) break;
          coords[p] = 0;
        }
      }
    }

    std::int64_t total_bits = 0;
    std::vector<int> first_bit(m, 0);
    for (int p = 0; p + 1 < m; ++p) {
      first_bit[p] = static_cast<int>(total_bits);
      total_bits += permuted.dim(p);
    }
    if (total_bits > bit_cap) {
      throw CapacityError("exact imbalance for shape " + shape.to_string() + " needs " + std::to_string(total_bits) +
                          " enumerated switches, cap is " + std::to_string(bit_cap));
    }
    bits_ = static_cast<int>(total_bits);
    free_bits_ = std::max(bits_ - 1, 0);
    bit_axis_.resize(bits_);
    bit_index_.resize(bits_);
    for (int p = 0; p + 1 < m; ++p) {
      for (Index i = 0; i < permuted.dim(p); ++i) {
        bit_axis_[first_bit[p] + i] = p;
        bit_index_[first_bit[p] + i] = i;
      }
    }

    row_bits_.resize(static_cast<std::size_t>(rows_) * std::max(m - 1, 0));
    slice_rows_.assign(bits_, {});
    for (Index r = 0; r < rows_; ++r) {
      Index rem = r;
      for (int p = m - 2; p >= 0; --p) {
        const Index c = rem % permuted.dim(p);
        rem /= permuted.dim(p);
        const int bit = first_bit[p] + static_cast<int>(c);
        row_bits_[static_cast<std::size_t>(r) * (m - 1) + p] = bit;
        slice_rows_[bit].push_back(r);
      }
    }
  }

  std::uint64_t states() const { return std::uint64_t{1} << free_bits_; }
  Index size() const { return rows_ * cols_; }

  void gather(const std::int8_t* original, std::int8_t* permuted) const {
    for (Index i = 0; i < size(); ++i) permuted[i] = original[gather_[i]];
  }
  Index original_index(Index permuted_flat) const { return gather_[permuted_flat]; }

  /// Best state in [begin, end) for a tensor in permuted layout; stops early
  /// once `ceiling` is reached or, checked every few thousand states, `stop()`.
  template <typename Stop>
  Best scan(const std::int8_t* a, std::uint64_t begin, std::uint64_t end, std::int64_t ceiling, Stop stop) const {
    std::vector<int> x = switches(begin);
    std::vector<int> w(rows_);
    std::vector<std::int64_t> b(cols_, 0);
    init_state(a, x, w, b);
    Best best;
    for (std::uint64_t s = begin; s < end; ++s) {
      if ((s & 0xfff) == 0 && stop()) break;
      if (s != begin) {
        const int bit = std::countr_zero(s) + 1;
        for (Index r : slice_rows_[bit]) {
          const std::int64_t twice = 2 * w[r];
          const std::int8_t* row = a + r * cols_;
          for (Index j = 0; j < cols_; ++j) b[j] -= twice * row[j];
          w[r] = -w[r];
        }
      }
      std::int64_t v = 0;
      for (Index j = 0; j < cols_; ++j) v += std::abs(b[j]);
      if (v > best.value) {
        best = {v, s};
        if (v >= ceiling) break;
      }
    }
    return best;
  }

  /// Maximizing plan for `state`, in the caller's axis order.
  AxisAssignment witness(const std::int8_t* a, std::uint64_t state) const {
    const std::vector<int> x = switches(state);
    std::vector<int> w(rows_);
    std::vector<std::int64_t> b(cols_, 0);
    init_state(a, x, w, b);
    const int m = shape_.order();
    std::vector<Eigen::VectorXd> vectors(m);
    for (int p = 0; p + 1 < m; ++p) vectors[perm_[p]] = Eigen::VectorXd::Zero(shape_.dim(perm_[p]));
    for (int bit = 0; bit < bits_; ++bit) vectors[perm_[bit_axis_[bit]]](bit_index_[bit]) = x[bit];
    Eigen::VectorXd last(cols_);
    for (Index j = 0; j < cols_; ++j) last(j) = b[j] >= 0 ? 1.0 : -1.0;
    vectors[perm_[m - 1]] = std::move(last);
    return AxisAssignment::signs(std::move(vectors));
  }

 private:
  // Switch values for Gray-code state s; switch 0 is pinned to +1.
  std::vector<int> switches(std::uint64_t s) const {
    const std::uint64_t gray = s ^ (s >> 1);
    std::vector<int> x(bits_, 1);
    for (int t = 1; t < bits_; ++t) x[t] = ((gray >> (t - 1)) & 1U) ? -1 : 1;
    return x;
  }

  void init_state(const std::int8_t* a, const std::vector<int>& x, std::vector<int>& w,
                  std::vector<std::int64_t>& b) const {
    const int m1 = shape_.order() - 1;
    for (Index r = 0; r < rows_; ++r) {
      int wr = 1;
      for (int p = 0; p < m1; ++p) wr *= x[row_bits_[static_cast<std::size_t>(r) * m1 + p]];
      w[r] = wr;
      const std::int8_t* row = a + r * cols_;
      for (Index j = 0; j < cols_; ++j) b[j] += wr * row[j];
    }
  }

  Shape shape_;
  std::vector<int> perm_;
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> gather_;
  int bits_ = 0;
  int free_bits_ = 0;
  std::vector<int> bit_axis_;
  std::vector<Index> bit_index_;
  std::vector<int> row_bits_;
  std::vector<std::vector<Index>> slice_rows_;
};

constexpr auto never = [] { return false; };

struct Candidate {
  std::int64_t value = -1;
  std::uint64_t state = 0;
};

GameResult make_result(const Shape& shape, std::int64_t imbalance, AxisAssignment witness) {
  GameResult r;
  r.imbalance = imbalance;
  r.witness = std::move(witness);
  r.lights_remaining = (shape.size() - imbalance) / 2;
  return r;
}

// Entries off every axis line through the origin (at least two nonzero coordinates).
std::vector<Index> free_positions(const Shape& shape) {
  std::vector<Index> out;
  const int m = shape.order();
  std::vector<Index> coords(m, 0);
  for (Index flat = 0; flat < shape.size(); ++flat) {
    int nonzero = 0;
    for (Index c : coords) nonzero += c != 0;
    if (nonzero >= 2) out.push_back(flat);
    for (int k = m - 1; k >= 0; --k) {
      if (++coords[k] < shape.dim(k)) break;
      coords[k] = 0;
    }
  }
  return out;
}

}  // namespace

LightPattern LightPattern::from_packed_rows(std::span<const std::uint64_t> rows, Index columns) {
  if (columns < 1 || columns > 64) throw DimensionError("packed rows support 1..64 columns");
  const Shape shape{static_cast<Index>(rows.size()), columns};
  SignTensor::Entries e(shape.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < columns; ++j) e(static_cast<Index>(i) * columns + j) = ((rows[i] >> j) & 1U) ? 1 : -1;
  }
  return LightPattern(SignTensor(shape, std::move(e)));
}

Index LightPattern::lights_on() const { return (signs_.entries().array() > 0).count(); }

std::vector<std::uint64_t> LightPattern::packed_rows() const {
  const Shape& s = shape();
  if (s.order() != 2 || s.dim(1) > 64) throw DimensionError("packed rows need a two-axis pattern with <= 64 columns");
  std::vector<std::uint64_t> rows(s.dim(0), 0);
  for (Index i = 0; i < s.dim(0); ++i) {
    for (Index j = 0; j < s.dim(1); ++j) {
      if (signs_.entries()(i * s.dim(1) + j) > 0) rows[i] |= std::uint64_t{1} << j;
    }
  }
  return rows;
}

LightPattern apply_switches(const LightPattern& pattern, const AxisAssignment& plan) {
  const Shape& shape = pattern.shape();
  if (plan.kind() != AssignmentKind::Signs) throw std::invalid_argument("switch plan must hold signs");
  plan.check_against(shape);
  const int m = shape.order();
  SignTensor::Entries e = pattern.signs().entries();
  std::vector<Index> coords(m, 0);
  for (Index flat = 0; flat < shape.size(); ++flat) {
    double f = 1.0;
    for (int k = 0; k < m; ++k) f *= plan.vector(k)(coords[k]);
    if (f < 0) e(flat) = static_cast<std::int8_t>(-e(flat));
    for (int k = m - 1; k >= 0; --k) {
      if (++coords[k] < shape.dim(k)) break;
      coords[k] = 0;
    }
  }
  return LightPattern(SignTensor(shape, std::move(e)));
}

GameResult best_imbalance_exact(const LightPattern& pattern, const EnumerationOptions& opts) {
  const Shape& shape = pattern.shape();
  const ImbalanceKernel kernel(shape, opts.bit_cap);
  std::vector<std::int8_t> a(kernel.size());
  kernel.gather(pattern.signs().entries().data(), a.data());
  const std::int64_t ceiling = shape.size();
  const Candidate best = detail::parallel_reduce<Candidate>(
      kernel.states(), opts.threads, Candidate{},
      [&](std::uint64_t begin, std::uint64_t end, auto stop) {
        const auto b = kernel.scan(a.data(), begin, end, ceiling, stop);
        return Candidate{b.value, b.state};
      },
      [](const Candidate& c, const Candidate& inc) { return c.value > inc.value; },
      [ceiling](const Candidate& c) { return c.value >= ceiling; });
  return make_result(shape, best.value, kernel.witness(a.data(), best.state));
}

GameResult best_imbalance_search(const LightPattern& pattern, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const SignTensor& t = pattern.signs();
  const Shape& shape = t.shape();
  const int m = shape.order();
  std::int64_t best_value = -1;
  AxisAssignment best_plan;
  for (int r = 0; r < restarts; ++r) {
    std::vector<Eigen::VectorXd> x(m);
    auto g = make_stream(seed, static_cast<std::uint64_t>(r));
    for (int k = 0; k < m; ++k) {
      x[k] = Eigen::VectorXd::Ones(shape.dim(k));
      if (r > 0) {
        for (Index i = 0; i < shape.dim(k); ++i) x[k](i) = random_sign(g);
      }
    }
    std::int64_t value = std::abs(evaluate_exact(t, AxisAssignment::signs(x)));
    for (bool improved = true; improved;) {
      improved = false;
      for (int k = 0; k < m; ++k) {
        const auto b = partial_contract_exact(t, AxisAssignment::signs(x), k);
        for (Index j = 0; j < b.size(); ++j) {
          if (b(j) != 0) x[k](j) = b(j) > 0 ? 1.0 : -1.0;
        }
        const std::int64_t aligned = b.cwiseAbs().sum();
        if (aligned > value) {
          value = aligned;
          improved = true;
        }
      }
    }
    if (value > best_value) {
      best_value = value;
      best_plan = AxisAssignment::signs(x);
    }
  }
  return make_result(shape, best_value, std::move(best_plan));
}

Index normalized_free_entries(const Shape& shape) {
  Index pinned = 1;
  for (Index d : shape.dims()) pinned += d - 1;
  return shape.size() - pinned;
}

WorstPattern worst_pattern_exact(const Shape& shape, const EnumerationOptions& opts) {
  const Index free_count = normalized_free_entries(shape);
  if (free_count > opts.bit_cap) {
    throw CapacityError("worst pattern for shape " + shape.to_string() + " has " + std::to_string(free_count) +
                        " free entries after orbit normalization, cap is " + std::to_string(opts.bit_cap));
  }
  const ImbalanceKernel kernel(shape, opts.bit_cap);
  const std::vector<Index> positions = free_positions(shape);
  // Free positions in the kernel's permuted layout.
  std::vector<Index> inverse(kernel.size());
  for (Index i = 0; i < kernel.size(); ++i) inverse[kernel.original_index(i)] = i;
  std::vector<Index> permuted_positions;
  for (Index p : positions) permuted_positions.push_back(inverse[p]);

  const std::uint64_t total = std::uint64_t{1} << free_count;
  const std::uint64_t states = kernel.states();
  const std::int64_t ceiling = shape.size();
  // Patterns are visited in Gray-code order of the free-entry mask.
  const Candidate best = detail::parallel_reduce<Candidate>(
      total, opts.threads, Candidate{std::numeric_limits<std::int64_t>::max(), 0},
      [&](std::uint64_t begin, std::uint64_t end, auto) {
        std::vector<std::int8_t> a(kernel.size(), 1);
        const std::uint64_t gray = begin ^ (begin >> 1);
        for (std::size_t t = 0; t < permuted_positions.size(); ++t) {
          if ((gray >> t) & 1U) a[permuted_positions[t]] = -1;
        }
        Candidate local{std::numeric_limits<std::int64_t>::max(), 0};
        for (std::uint64_t s = begin; s < end; ++s) {
          if (s != begin) {
            const Index pos = permuted_positions[std::countr_zero(s)];
            a[pos] = static_cast<std::int8_t>(-a[pos]);
          }
          const std::int64_t v = kernel.scan(a.data(), 0, states, ceiling, never).value;
          if (v < local.value) local = {v, s};
        }
        return local;
      },
      [](const Candidate& c, const Candidate& inc) { return c.value < inc.value; },
      [](const Candidate&) { return false; });

  SignTensor::Entries e = SignTensor::Entries::Ones(shape.size());
  const std::uint64_t gray = best.state ^ (best.state >> 1);
  for (std::size_t t = 0; t < positions.size(); ++t) {
    if ((gray >> t) & 1U) e(positions[t]) = -1;
  }
  return WorstPattern{best.value, LightPattern(SignTensor(shape, std::move(e)))};
}

WorstPattern worst_pattern_search(const Shape& shape, std::int64_t budget, std::uint64_t seed,
                                  const EnumerationOptions& opts) {
  if (budget < 1) throw std::invalid_argument("search budget must be >= 1");
  const ImbalanceKernel kernel(shape, opts.bit_cap);
  const Index n = shape.size();
  const std::uint64_t states = kernel.states();
  auto g = make_stream(seed, 0);

  std::vector<std::int8_t> pattern(n);
  std::vector<std::int8_t> permuted(n);
  std::vector<std::int8_t> best_pattern;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::int64_t evaluations = 0;
  auto evaluate_pattern = [&] {
    ++evaluations;
    kernel.gather(pattern.data(), permuted.data());
    const std::int64_t v = kernel.scan(permuted.data(), 0, states, n, never).value;
    if (v < best) {
      best = v;
      best_pattern = pattern;
    }
    return v;
  };

  std::vector<Index> order(n);
  while (evaluations < budget) {
    for (auto& e : pattern) e = static_cast<std::int8_t>(random_sign(g));
    std::int64_t current = evaluate_pattern();
    for (bool improved = true; improved && evaluations < budget;) {
      improved = false;
      std::iota(order.begin(), order.end(), Index{0});
      for (Index i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(g, i + 1)]);
      for (Index pos : order) {
        if (evaluations >= budget) break;
        pattern[pos] = static_cast<std::int8_t>(-pattern[pos]);
        const std::int64_t v = evaluate_pattern();
        if (v < current) {
          current = v;
          improved = true;
        } else {
          pattern[pos] = static_cast<std::int8_t>(-pattern[pos]);
        }
      }
    }
  }
  SignTensor::Entries e = Eigen::Map<const SignTensor::Entries>(best_pattern.data(), n);
  return WorstPattern{best, LightPattern(SignTensor(shape, std::move(e)))};
}

}  // namespace gbg
