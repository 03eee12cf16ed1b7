#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jarcon/association.hpp"
#include "jarcon/core_model.hpp"
#include "jarcon/descriptives.hpp"
#include "jarcon/inference.hpp"
#include "jarcon/modeling.hpp"

namespace jarcon {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct AnalysisConfig {
  ClassifyOptions classify;
  std::string response_attribute = "global_liking";
  std::string taste_attribute = "global_taste";
  bool include_liking_only_in_summaries = true;
  /// Free-form provenance (e.g. generator seed and archetypes) copied into
  /// the report's metadata block.
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// A report section that may legitimately be unavailable (too few
/// assessors in a group, missing response attribute, ...).
template <typename T>
struct Section {
  std::string key;
  std::optional<T> value;
  std::string error;  // set when value is absent
};

struct AnalysisReport {
  AnalysisConfig config;
  DatasetHeader header;
  std::size_t evaluation_count = 0;
  std::size_t liking_only_count = 0;

  PanelClassification classification;
  std::vector<AssessorSummary> summaries;

  ContingencyTable contingency{false};  // liking x JAR
  ContingencyTable folded{true};        // liking x |JAR|
  NormalizedTable normalized;           // of `contingency`
  Section<TauResult> panel_tau;
  std::vector<AttributeTau> attribute_taus;

  std::optional<StatsTable> liking_stats;
  std::optional<StatsTable> jar_stats;
  std::optional<JarTestGrid> jar_tests;

  std::vector<Section<GroupComparison>> comparisons;  // keyed by field name
  Section<GroupFits> attribute_model;  // response ~ all paired attributes
  Section<GroupFits> taste_model;      // response ~ taste attribute
  std::vector<Section<ScatterSeries>> scatters;  // keyed by x field
  Section<TrendLine> attribute_line_sd_liking;   // attribute tau_c vs attribute liking SD
  Section<TrendLine> attribute_line_sd_jar;
  Section<std::vector<GroupRatioCell>> group_ratio;  // taste x response counts
};

/// Runs the full workflow: tau_c and a verdict per assessor, descriptive
/// tables, group comparisons and the three-way regressions.
AnalysisReport analyze(const Dataset& ds, const AnalysisConfig& config);

/// Schema-stable JSON; floats carry 6 significant digits and non-finite
/// values become null, so dump() output is byte-stable.
nlohmann::ordered_json to_json(const AnalysisReport& report);

/// R-style coefficient table of a fit (Estimate, Std. Error, t value,
/// Pr(>|t|), R-squared, adjusted R-squared).
std::string render_fit(const RegressionFit& fit);

enum class ReportFormat { json, csv_bundle };

/// Writes report.json and/or tables/*.csv under `out_dir`; returns the
/// paths written. Throws Error(io) naming the failing path.
std::vector<std::filesystem::path> emit_report(const AnalysisReport& report,
                                               const std::filesystem::path& out_dir,
                                               ReportFormat format);

/// Rounds to 6 significant digits as used in the JSON output.
double round_sig6(double v);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace jarcon
