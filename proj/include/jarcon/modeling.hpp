#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jarcon/association.hpp"
#include "jarcon/core_model.hpp"
#include "jarcon/descriptives.hpp"
#include "jarcon/inference.hpp"

namespace jarcon {

/// Per-assessor scale usage next to their tau_c.
struct AssessorSummary {
  std::string assessor_id;
  TauResult tau;
  std::optional<ConsistencyLabel> label;  // absent for unclassifiable assessors
  double mean_liking = 0.0;
  double sd_liking = 0.0;
  double mean_jar = 0.0;
  double sd_jar = 0.0;
  std::int64_t tie_free_pairs = 0;
};

struct SummaryOptions {
  bool include_liking_only = true;  // liking statistics also cover liking-only records
  MPolicy m_policy = MPolicy::fixed_scale;
};

/// Assessors with fewer than two paired evaluations are skipped, since tau_c
/// is undefined for them. SDs of single-value assessors are 0.
std::vector<AssessorSummary> summarize_assessors(const Dataset& ds,
                                                 const PanelClassification& verdicts,
                                                 const SummaryOptions& options = {});

enum class SummaryField { mean_liking, sd_liking, mean_jar, sd_jar, tie_free_pairs, tau_c };

std::string_view to_string(SummaryField field) noexcept;
SummaryField parse_summary_field(std::string_view name);
double field_value(const AssessorSummary& s, SummaryField field);

/// Welch two-sample t-test (Welch-Satterthwaite df, two-sided p). Two
/// zero-variance groups are decided on their means alone and flagged
/// `degenerate`. Throws Error(insufficient_data) if a group has < 2 values.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

struct GroupComparison {
  SummaryField field = SummaryField::sd_liking;
  std::size_t n_consistent = 0;
  std::size_t n_inconsistent = 0;
  double mean_consistent = 0.0;
  double mean_inconsistent = 0.0;
  TTestResult test;  // consistent minus inconsistent
};

GroupComparison compare_groups(std::span<const AssessorSummary> summaries, SummaryField field,
                               double alpha = 0.05);

struct Predictor {
  std::string name;
  std::vector<double> values;
};

struct RegressionFit {
  std::vector<std::string> names;  // "(Intercept)" first when fitted
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> t_values;
  std::vector<double> p_values;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double residual_se = 0.0;
  std::size_t n = 0;
  std::int64_t df_resid = 0;
  bool intercept = true;

  std::optional<double> coefficient(std::string_view name) const;
};

struct OlsOptions {
  bool intercept = true;
  /// Accept n == p + 1 (zero residual df); inference fields are then NaN.
  bool allow_saturated = false;
};

/// Least squares via Householder QR. Throws Error(collinearity) naming the
/// first column that makes the design rank-deficient (singular value ratio
/// below 1e-10), Error(insufficient_data) when n <= p + 1.
RegressionFit ols(std::span<const double> y, std::span<const Predictor> predictors,
                  const OlsOptions& options = {});

/// Regressions of one response on a set of predictors, split by label.
/// Unclassifiable assessors only enter the `all` fit.
struct GroupFits {
  RegressionFit consistent;
  RegressionFit inconsistent;
  RegressionFit all;
};

/// Rows are (assessor, sample) pairs having the response and every
/// predictor. Attributes may be paired or liking-only; liking scores are
/// used in both cases. Errors from ols propagate.
GroupFits group_regressions(const Dataset& ds, const PanelClassification& verdicts,
                            std::string_view response, std::span<const std::string> predictors);

struct ScatterPoint {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct TrendLine {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

struct ScatterSeries {
  SummaryField x_field = SummaryField::sd_liking;
  SummaryField y_field = SummaryField::tau_c;
  std::vector<ScatterPoint> consistent;
  std::vector<ScatterPoint> inconsistent;
  std::vector<ScatterPoint> unlabeled;
  TrendLine line;  // over all points
};

/// Simple least-squares line through (x, y). Throws Error(insufficient_data)
/// for fewer than two points, Error(collinearity) when all x are equal.
TrendLine fit_line(std::span<const double> x, std::span<const double> y);

ScatterSeries scatter_series(std::span<const AssessorSummary> summaries, SummaryField x_field,
                             SummaryField y_field = SummaryField::tau_c);

/// Attribute-level tau_c (liking vs |JAR| over all assessors and samples)
/// with the attribute's liking and JAR spreads.
struct AttributeTau {
  std::string attribute;
  TauResult tau;
  double sd_liking = 0.0;
  double sd_jar = 0.0;
};

std::vector<AttributeTau> attribute_taus(const Dataset& ds,
                                         MPolicy policy = MPolicy::fixed_scale);

/// Count of (x, y) liking pairs per group, e.g. global taste vs global
/// liking, for group-ratio markers.
struct GroupRatioCell {
  int x = 0;
  int y = 0;
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
  std::size_t unlabeled = 0;
};

std::vector<GroupRatioCell> group_ratio_cells(const Dataset& ds,
                                              const PanelClassification& verdicts,
                                              std::string_view x_attribute,
                                              std::string_view y_attribute);

}  // namespace jarcon
