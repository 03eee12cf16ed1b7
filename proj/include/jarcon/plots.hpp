#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jarcon/association.hpp"
#include "jarcon/descriptives.hpp"
#include "jarcon/modeling.hpp"
#include "jarcon/report.hpp"

namespace jarcon {

// Canvas geometry shared by every chart (SVG user units).
inline constexpr double kCanvasWidth = 800;
inline constexpr double kCanvasHeight = 600;
inline constexpr double kMarginLeft = 80;
inline constexpr double kMarginRight = 40;
inline constexpr double kMarginTop = 50;
inline constexpr double kMarginBottom = 70;
inline constexpr double kMaxBubbleRadius = 28;

/// One rendered chart: the SVG plus the CSV of exactly the numbers plotted.
/// `extra` holds further sibling CSVs as (file stem suffix, content).
struct Chart {
  std::string name;  // file stem, e.g. "bubble"
  std::string svg;
  std::string csv;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Liking x JAR bubbles, area proportional to the count. Nullopt for an
/// empty table.
std::optional<Chart> bubble_chart(const ContingencyTable& table);

Chart tau_histogram_chart(std::span<const HistogramBin> bins);

/// Mean +/- SD of one summary field per group. Nullopt when either group is
/// empty.
std::optional<Chart> group_means_chart(std::span<const AssessorSummary> summaries,
                                       SummaryField field);

/// Per-assessor scatter with the least-squares line over all points. The
/// trend CSV (extra "_trend") carries the line at full precision.
std::optional<Chart> scatter_chart(const ScatterSeries& series);

/// Attribute-level tau_c against the attribute's liking or JAR SD.
std::optional<Chart> attribute_scatter_chart(std::span<const AttributeTau> taus,
                                             SummaryField x_field, const TrendLine& line);

/// Counts of consistent vs inconsistent assessors per (x, y) score cell;
/// marker size grows with the total, colour with the consistent share.
std::optional<Chart> group_ratio_chart(std::span<const GroupRatioCell> cells,
                                       std::string_view x_label, std::string_view y_label);

/// Renders every chart of the report under out_dir/plots. Charts that cannot
/// be drawn are listed with a reason in plots/NOTES.txt. Returns the paths
/// written.
std::vector<std::filesystem::path> emit_plots(const AnalysisReport& report,
                                              const std::filesystem::path& out_dir);

}  // namespace jarcon
