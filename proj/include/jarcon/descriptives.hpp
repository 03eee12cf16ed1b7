#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jarcon/association.hpp"
#include "jarcon/core_model.hpp"

namespace jarcon {

/// Mean and sample standard deviation (n - 1 denominator).
struct CellStats {
  double mean = 0.0;
  std::optional<double> sd;  // absent for n == 1
  std::size_t n = 0;
};

/// Throws Error(insufficient_data) on an empty span.
CellStats cell_stats(std::span<const double> values);

enum class Scale { liking, jar };

/// Attribute x sample grid. Rows follow the dataset's paired attributes and,
/// for the liking scale, its liking-only attributes after them. Cells with
/// no observations are absent.
struct StatsTable {
  Scale scale = Scale::liking;
  std::vector<std::string> attributes;
  std::vector<std::string> samples;
  std::vector<std::vector<std::optional<CellStats>>> cells;  // [attribute][sample]
  std::vector<std::optional<CellStats>> pooled;              // "All" column
};

/// Throws Error(insufficient_data) on an empty dataset.
StatsTable stats_table(const Dataset& ds, Scale scale);

struct TTestResult {
  double statistic = 0.0;  // +/-inf when the variance is zero and the mean is not
  double df = 0.0;
  double p_value = 1.0;
  bool significant = false;
  bool degenerate = false;  // zero variance: decided on the mean alone
};

/// One-sample two-sided t-test of mean == 0 at level `alpha`.
/// Throws Error(insufficient_data) for n < 2.
TTestResult jar_zero_test(std::span<const double> values, double alpha = 0.05);

/// Same test from summary statistics.
TTestResult one_sample_t_test(double mean, double sd, std::size_t n, double alpha = 0.05);

/// jar_zero_test for every cell of the JAR grid, laid out like
/// stats_table(ds, Scale::jar). Cells with n < 2 are absent.
struct JarTestGrid {
  std::vector<std::vector<std::optional<TTestResult>>> cells;  // [attribute][sample]
  std::vector<std::optional<TTestResult>> pooled;
};

JarTestGrid jar_zero_tests(const Dataset& ds, double alpha = 0.05);

/// Row-stochastic version of a contingency table.
struct NormalizedTable {
  std::vector<std::vector<double>> proportions;  // [row][col]
  std::vector<bool> zero_row;                    // rows left at zero
};

NormalizedTable normalize_rows(const ContingencyTable& table);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

/// Half-open bins [lo, lo + w) tiling [-1, 1]; the last bin also holds 1.
/// Throws Error(range) for values outside [-1, 1] or a non-positive width.
std::vector<HistogramBin> tau_histogram(std::span<const double> taus, double bin_width = 0.1);

}  // namespace jarcon
