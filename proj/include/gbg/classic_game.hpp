#pragma once

#include <cstdint>
#include <vector>

#include "gbg/tensor.hpp"

namespace gbg {

/// Limits for exhaustive enumeration.
struct EnumerationOptions {
  /// Maximum number of enumerated sign bits.
  int bit_cap = 30;
  /// Worker threads; results never depend on this.
  unsigned threads = 1;
};

/// ±1 light pattern (on = +1, off = −1).
class LightPattern {
 public:
  LightPattern() = default;
  explicit LightPattern(SignTensor signs) : signs_(std::move(signs)) {}
  /// Two-axis pattern from packed rows: bit j of rows[i] set means light (i, j) is on.
  static LightPattern from_packed_rows(std::span<const std::uint64_t> rows, Index columns);

  const SignTensor& signs() const { return signs_; }
  const Shape& shape() const { return signs_.shape(); }
  Index lights_on() const;

  /// Packed row view for two-axis patterns with at most 64 columns.
  std::vector<std::uint64_t> packed_rows() const;

  friend bool operator==(const LightPattern&, const LightPattern&) = default;

 private:
  SignTensor signs_;
};

/// Best switching outcome for one pattern. lights_remaining = (N − imbalance) / 2.
struct GameResult {
  std::int64_t imbalance = 0;
  AxisAssignment witness;
  std::int64_t lights_remaining = 0;
};

struct WorstPattern {
  std::int64_t value = 0;
  LightPattern witness;
};

/// Multiplies entry (j_1..j_m) by Π_k x^{(k)}_{j_k}.
LightPattern apply_switches(const LightPattern& pattern, const AxisAssignment& plan);

/// Exact max over all switch plans of |Σ a x^{(1)}...x^{(m)}|.
///
/// The largest axis is closed in closed form (optimal signs give Σ_j |b_j|);
/// the remaining axes are enumerated in reflected Gray-code order with the
/// first switch pinned to +1. Throws CapacityError when the remaining dims
/// sum past `opts.bit_cap`. Ties keep the first plan in enumeration order.
GameResult best_imbalance_exact(const LightPattern& pattern, const EnumerationOptions& opts = {});

/// Alternating sign ascent with seeded random restarts (restart 0 starts from
/// all switches up). A lower bound on the exact value; used when the exact
/// enumeration is out of budget.
GameResult best_imbalance_search(const LightPattern& pattern, int restarts, std::uint64_t seed);

/// Number of free entries after pinning every switch orbit to its normal form
/// (all entries on axis lines through the first index set to +1).
Index normalized_free_entries(const Shape& shape);

/// Exact minimum of best_imbalance_exact over all patterns of `shape`,
/// enumerating one representative per switch orbit. Throws CapacityError when
/// the free entry count exceeds `opts.bit_cap`.
WorstPattern worst_pattern_exact(const Shape& shape, const EnumerationOptions& opts = {});

/// Random starts followed by first-improvement single-entry-flip descent.
/// `budget` counts exact pattern evaluations; the visit sequence depends only
/// on the seed, so a larger budget extends a smaller one.
WorstPattern worst_pattern_search(const Shape& shape, std::int64_t budget, std::uint64_t seed,
                                  const EnumerationOptions& opts = {});

}  // namespace gbg
