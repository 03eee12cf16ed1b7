#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jarcon/core_model.hpp"

namespace jarcon {

/// Raw (liking, JAR) pair. Association routines validate ranges on entry.
struct ScorePair {
  int liking;
  int jar;

  friend bool operator==(const ScorePair&, const ScorePair&) = default;
};

std::vector<ScorePair> to_pairs(std::span<const Evaluation> evaluations);

/// How m (the smaller table dimension) is chosen for Stuart's tau-c.
enum class MPolicy {
  fixed_scale,       // declared scale dimensions: min(9, 3) for folded tables
  observed_support,  // nonempty rows/columns only
};

/// Liking x JAR (or liking x |JAR|) count matrix. Always carries the full
/// declared scale: 9 x 5 unfolded, 9 x 3 folded.
class ContingencyTable {
 public:
  static constexpr int kRows = LikingScore::kLevels;

  explicit ContingencyTable(bool folded = true);

  /// `counts` is row-major, rows = liking 1..9. Throws Error(validation) on a
  /// shape mismatch or a negative count.
  static ContingencyTable from_counts(const std::vector<std::vector<std::int64_t>>& counts,
                                      bool folded);

  bool folded() const noexcept { return folded_; }
  int rows() const noexcept { return kRows; }
  int cols() const noexcept { return folded_ ? JarScore::kMagnitudeLevels : JarScore::kLevels; }

  /// Scale value of row `r` (liking) and column `c` (JAR or |JAR|).
  int row_level(int r) const noexcept { return LikingScore::kMin + r; }
  int col_level(int c) const noexcept { return folded_ ? c : c + JarScore::kMin; }

  std::int64_t count(int r, int c) const { return counts_[index(r, c)]; }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t row_total(int r) const;
  std::int64_t col_total(int c) const;
  int nonempty_rows() const;
  int nonempty_cols() const;

  /// Adds one observation, folding the JAR score when the table is folded.
  void add(int liking, int jar, std::int64_t weight = 1);

  /// Merges -k and +k columns. Identity on an already folded table.
  ContingencyTable fold() const;

  /// One ScorePair per counted observation, row-major. For folded tables the
  /// JAR value is the (non-negative) magnitude. Throws Error(range) above
  /// kMaxExpansion observations.
  std::vector<ScorePair> expand() const;
  static constexpr std::int64_t kMaxExpansion = 10'000;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * cols() + c); }

  bool folded_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Ordered-pair counts. concordant + discordant + tied == n * (n - 1).
struct PairCounts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t tied = 0;
  std::int64_t n = 0;

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct TauResult {
  double tau_c = 0.0;
  PairCounts pairs;
  int m = 0;
  std::optional<double> se;  // filled in by the inference layer when defined
  std::int64_t n = 0;
};

ContingencyTable build_contingency(std::span<const ScorePair> pairs, bool fold);

/// O(n^2) reference count over ordered pairs i != j. Liking differences are
/// compared against |JAR| differences: same strict sign is concordant.
PairCounts count_pairs_bruteforce(std::span<const ScorePair> pairs);

/// Cell-pair aggregation over the table, identical to the brute force on any
/// expansion of the table. Columns are compared in their stored order, so
/// pass a folded table for consistency analysis.
PairCounts count_pairs_from_table(const ContingencyTable& table);

/// For each cell, how many observations are concordant (`concordant`) and
/// discordant (`discordant`) with an observation in that cell. Row-major,
/// same shape as the table.
struct CellPairMass {
  std::vector<std::int64_t> concordant;
  std::vector<std::int64_t> discordant;
};
CellPairMass cell_pair_mass(const ContingencyTable& table);

/// m under the given policy (fixed: min(rows, cols) of the declared shape).
int table_m(const ContingencyTable& table, MPolicy policy);

/// tau_c = (n_c - n_d) / (n^2 (m - 1) / m). Throws Error(insufficient_data)
/// for n < 2 and Error(degenerate_table) when m < 2. Pairs are compared on
/// |JAR|, so an unfolded table is folded first.
TauResult tau_c(const ContingencyTable& table, MPolicy policy = MPolicy::fixed_scale);

/// Folds the pairs into a liking x |JAR| table first.
TauResult tau_c(std::span<const ScorePair> pairs, MPolicy policy = MPolicy::fixed_scale);

/// n_c + n_d over ordered pairs: how many pairs the assessor discriminated
/// on both scales.
std::int64_t tie_free_pair_count(std::span<const ScorePair> pairs);

}  // namespace jarcon
