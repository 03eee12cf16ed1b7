#include "jarcon/plots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "jarcon/csv_io.hpp"
#include "jarcon/error.hpp"

namespace jarcon {

namespace {

constexpr double kPlotLeft = kMarginLeft;
constexpr double kPlotRight = kCanvasWidth - kMarginRight;
constexpr double kPlotTop = kMarginTop;
constexpr double kPlotBottom = kCanvasHeight - kMarginBottom;

constexpr std::string_view kConsistentColour = "#1f77b4";
constexpr std::string_view kInconsistentColour = "#d62728";
constexpr std::string_view kNeutralColour = "#7f7f7f";

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string px(double v) {
  std::string s = fmt::format("{:.2f}", v);
  return s == "-0.00" ? "0.00" : s;
}

std::string full(double v) { return fmt::format("{:.17g}", v); }

class Svg {
 public:
  explicit Svg(std::string_view title) {
    out_ = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"#ffffff\"/>\n",
        kCanvasWidth, kCanvasHeight);
    text(kCanvasWidth / 2, kMarginTop / 2 + 6, title, "middle", 16);
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#000000",
            double width = 1, std::string_view dash = {}) {
    out_ += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"",
                        px(x1), px(y1), px(x2), px(y2), stroke, px(width));
    if (!dash.empty()) out_ += fmt::format(" stroke-dasharray=\"{}\"", dash);
    out_ += "/>\n";
  }

  void rect(double x, double y, double w, double h, std::string_view fill) {
    out_ += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#000000\" "
        "stroke-width=\"0.50\"/>\n",
        px(x), px(y), px(w), px(h), fill);
  }

  void circle(double cx, double cy, double r, std::string_view fill, double opacity = 0.7) {
    out_ += fmt::format(
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"#000000\" "
        "stroke-width=\"0.50\"/>\n",
        px(cx), px(cy), px(r), fill, px(opacity));
  }

  void text(double x, double y, std::string_view s, std::string_view anchor = "middle",
            int size = 12, bool vertical = false) {
    out_ += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" "
                        "text-anchor=\"{}\"",
                        px(x), px(y), size, anchor);
    if (vertical) out_ += fmt::format(" transform=\"rotate(-90 {} {})\"", px(x), px(y));
    out_ += fmt::format(">{}</text>\n", xml_escape(s));
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  std::string out_;
};

// Linear data-to-pixel map for one axis.
struct Axis {
  double lo = 0;
  double hi = 1;
  double px_lo = 0;
  double px_hi = 1;
  std::vector<double> ticks;

  double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

std::string tick_label(double v) {
  if (std::fabs(v) < 1e-12) v = 0;
  return fmt::format("{:.4g}", v);
}

// Range covering [min, max] with round tick steps of 1, 2 or 5 x 10^k.
Axis nice_axis(double min, double max, double px_lo, double px_hi) {
  if (!(max > min)) {
    min -= 1;
    max += 1;
  }
  const double raw = (max - min) / 6;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10 * mag;
  for (double f : {1.0, 2.0, 5.0}) {
    if (f * mag >= raw) {
      step = f * mag;
      break;
    }
  }
  Axis a{std::floor(min / step) * step, std::ceil(max / step) * step, px_lo, px_hi, {}};
  const int count = static_cast<int>(std::lround((a.hi - a.lo) / step));
  for (int i = 0; i <= count; ++i) a.ticks.push_back(a.lo + i * step);
  return a;
}

// Evenly spaced integer categories lo..hi with half a slot of padding.
Axis integer_axis(int lo, int hi, double px_lo, double px_hi) {
  Axis a{lo - 0.5, hi + 0.5, px_lo, px_hi, {}};
  for (int v = lo; v <= hi; ++v) a.ticks.push_back(v);
  return a;
}

void draw_frame(Svg& svg, const Axis& x, const Axis& y, std::string_view x_label,
                std::string_view y_label) {
  svg.line(kPlotLeft, kPlotBottom, kPlotRight, kPlotBottom);
  svg.line(kPlotLeft, kPlotTop, kPlotLeft, kPlotBottom);
  for (double t : x.ticks) {
    const double at = x(t);
    svg.line(at, kPlotBottom, at, kPlotBottom + 5);
    svg.text(at, kPlotBottom + 20, tick_label(t));
  }
  for (double t : y.ticks) {
    const double at = y(t);
    svg.line(kPlotLeft - 5, at, kPlotLeft, at);
    svg.text(kPlotLeft - 8, at + 4, tick_label(t), "end");
  }
  svg.text((kPlotLeft + kPlotRight) / 2, kCanvasHeight - 20, x_label, "middle", 14);
  svg.text(24, (kPlotTop + kPlotBottom) / 2, y_label, "middle", 14, true);
}

void legend(Svg& svg, std::span<const std::pair<std::string_view, std::string_view>> entries) {
  double y = kPlotTop + 12;
  for (const auto& [label, colour] : entries) {
    svg.circle(kPlotRight - 120, y - 4, 5, colour, 0.9);
    svg.text(kPlotRight - 110, y, label, "start", 12);
    y += 18;
  }
}

std::string field_title(SummaryField f) {
  switch (f) {
    case SummaryField::mean_liking: return "Mean liking score";
    case SummaryField::sd_liking: return "SD of liking scores";
    case SummaryField::mean_jar: return "Mean JAR score";
    case SummaryField::sd_jar: return "SD of JAR scores";
    case SummaryField::tie_free_pairs: return "Tie-free pair count";
    case SummaryField::tau_c: return "Kendall tau_c";
  }
  return "";
}

}  // namespace

std::optional<Chart> bubble_chart(const ContingencyTable& table) {
  if (table.total() == 0) return std::nullopt;
  const int first_col = table.col_level(0);
  const int last_col = table.col_level(table.cols() - 1);
  const Axis x = integer_axis(first_col, last_col, kPlotLeft, kPlotRight);
  const Axis y = integer_axis(LikingScore::kMin, LikingScore::kMax, kPlotBottom, kPlotTop);
  std::int64_t max_count = 0;
  for (int r = 0; r < table.rows(); ++r) {
    for (int c = 0; c < table.cols(); ++c) max_count = std::max(max_count, table.count(r, c));
  }

  Svg svg("Frequency of liking-JAR score pairs");
  draw_frame(svg, x, y, table.folded() ? "|JAR| score" : "JAR score", "Liking score");
  std::string csv = "liking,jar,count,radius\n";
  for (int r = 0; r < table.rows(); ++r) {
    for (int c = 0; c < table.cols(); ++c) {
      const auto count = table.count(r, c);
      if (count == 0) continue;
      const double radius =
          kMaxBubbleRadius * std::sqrt(static_cast<double>(count) / static_cast<double>(max_count));
      svg.circle(x(table.col_level(c)), y(table.row_level(r)), radius, kConsistentColour, 0.6);
      csv += fmt::format("{},{},{},{}\n", table.row_level(r), table.col_level(c), count,
                         px(radius));
    }
  }
  return Chart{"bubble", svg.finish(), std::move(csv), {}};
}

Chart tau_histogram_chart(std::span<const HistogramBin> bins) {
  const Axis x = nice_axis(-1, 1, kPlotLeft, kPlotRight);
  std::size_t max_count = 1;
  for (const auto& b : bins) max_count = std::max(max_count, b.count);
  const Axis y = nice_axis(0, static_cast<double>(max_count), kPlotBottom, kPlotTop);

  Svg svg("Distribution of assessor tau_c");
  draw_frame(svg, x, y, "Kendall tau_c", "Number of assessors");
  std::string csv = "lower,upper,count\n";
  for (const auto& b : bins) {
    csv += fmt::format("{},{},{}\n", tick_label(b.lower), tick_label(b.upper), b.count);
    if (b.count == 0) continue;
    const double top = y(static_cast<double>(b.count));
    svg.rect(x(b.lower), top, x(b.upper) - x(b.lower), kPlotBottom - top, kConsistentColour);
  }
  return Chart{"tau_histogram", svg.finish(), std::move(csv), {}};
}

std::optional<Chart> group_means_chart(std::span<const AssessorSummary> summaries,
                                       SummaryField field) {
  std::vector<double> groups[2];
  for (const auto& s : summaries) {
    if (!s.label) continue;
    groups[*s.label == ConsistencyLabel::consistent ? 0 : 1].push_back(field_value(s, field));
  }
  if (groups[0].empty() || groups[1].empty()) return std::nullopt;

  CellStats stats[2] = {cell_stats(groups[0]), cell_stats(groups[1])};
  double lo = 0;
  double hi = 0;
  for (const auto& st : stats) {
    const double sd = st.sd.value_or(0.0);
    lo = std::min(lo, st.mean - sd);
    hi = std::max(hi, st.mean + sd);
  }
  const Axis x = integer_axis(0, 1, kPlotLeft, kPlotRight);
  const Axis y = nice_axis(lo, hi, kPlotBottom, kPlotTop);

  const std::string title = field_title(field);
  Svg svg(title + " by assessor group");
  svg.line(kPlotLeft, kPlotBottom, kPlotRight, kPlotBottom);
  svg.line(kPlotLeft, kPlotTop, kPlotLeft, kPlotBottom);
  for (double t : y.ticks) {
    svg.line(kPlotLeft - 5, y(t), kPlotLeft, y(t));
    svg.text(kPlotLeft - 8, y(t) + 4, tick_label(t), "end");
  }
  svg.text(24, (kPlotTop + kPlotBottom) / 2, title, "middle", 14, true);

  std::string csv = "group,n,mean,sd\n";
  static constexpr std::string_view kNames[2] = {"consistent", "inconsistent"};
  const std::string_view colours[2] = {kConsistentColour, kInconsistentColour};
  const double bar_width = 120;
  for (int g = 0; g < 2; ++g) {
    const auto& st = stats[g];
    const double cx = x(g);
    const double zero = y(0);
    const double top = y(st.mean);
    svg.rect(cx - bar_width / 2, std::min(zero, top), bar_width, std::fabs(zero - top), colours[g]);
    if (st.sd) {
      const double a = y(st.mean - *st.sd);
      const double b = y(st.mean + *st.sd);
      svg.line(cx, a, cx, b, "#000000", 1.5);
      svg.line(cx - 15, a, cx + 15, a, "#000000", 1.5);
      svg.line(cx - 15, b, cx + 15, b, "#000000", 1.5);
    }
    svg.text(cx, kPlotBottom + 20, fmt::format("{} (n={})", kNames[g], st.n));
    csv += fmt::format("{},{},{},{}\n", kNames[g], st.n, full(st.mean),
                       st.sd ? full(*st.sd) : "NA");
  }
  return Chart{fmt::format("group_{}", to_string(field)), svg.finish(), std::move(csv), {}};
}

namespace {

std::string trend_csv(const TrendLine& line) {
  return fmt::format("intercept,slope,r_squared\n{},{},{}\n", full(line.intercept),
                     full(line.slope), full(line.r_squared));
}

void draw_trend(Svg& svg, const Axis& x, const Axis& y, const TrendLine& line) {
  // Clip the line to the plotted y range.
  double x0 = x.lo;
  double x1 = x.hi;
  if (line.slope != 0.0) {
    const double at_lo = (y.lo - line.intercept) / line.slope;
    const double at_hi = (y.hi - line.intercept) / line.slope;
    x0 = std::max(x0, std::min(at_lo, at_hi));
    x1 = std::min(x1, std::max(at_lo, at_hi));
  }
  if (x1 <= x0) return;
  svg.line(x(x0), y(line.intercept + line.slope * x0), x(x1), y(line.intercept + line.slope * x1),
           "#000000", 1.5, "6 4");
  svg.text(kPlotRight, kPlotBottom - 10,
           fmt::format("y = {:.3f} + {:.3f} x, R2 = {:.3f}", line.intercept, line.slope,
                       line.r_squared),
           "end", 12);
}

}  // namespace

std::optional<Chart> scatter_chart(const ScatterSeries& series) {
  const std::size_t total =
      series.consistent.size() + series.inconsistent.size() + series.unlabeled.size();
  if (total < 2) return std::nullopt;

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto* group : {&series.consistent, &series.inconsistent, &series.unlabeled}) {
    for (const auto& p : *group) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const Axis x = nice_axis(xmin, xmax, kPlotLeft, kPlotRight);
  const Axis y = nice_axis(ymin, ymax, kPlotBottom, kPlotTop);

  Svg svg(fmt::format("{} against {}", field_title(series.y_field), field_title(series.x_field)));
  draw_frame(svg, x, y, field_title(series.x_field), field_title(series.y_field));
  std::string csv = "group,assessor,x,y\n";
  const std::tuple<std::string_view, const std::vector<ScatterPoint>*, std::string_view> groups[] = {
      {"consistent", &series.consistent, kConsistentColour},
      {"inconsistent", &series.inconsistent, kInconsistentColour},
      {"unclassifiable", &series.unlabeled, kNeutralColour}};
  for (const auto& [name, points, colour] : groups) {
    for (const auto& p : *points) {
      svg.circle(x(p.x), y(p.y), 4, colour);
      csv += fmt::format("{},{},{},{}\n", name, csv_escape(p.id), full(p.x), full(p.y));
    }
  }
  draw_trend(svg, x, y, series.line);
  const std::pair<std::string_view, std::string_view> entries[] = {
      {"consistent", kConsistentColour}, {"inconsistent", kInconsistentColour}};
  legend(svg, entries);
  return Chart{fmt::format("scatter_{}", to_string(series.x_field)), svg.finish(), std::move(csv),
               {{"_trend", trend_csv(series.line)}}};
}

std::optional<Chart> attribute_scatter_chart(std::span<const AttributeTau> taus,
                                             SummaryField x_field, const TrendLine& line) {
  if (taus.size() < 2) return std::nullopt;
  if (x_field != SummaryField::sd_liking && x_field != SummaryField::sd_jar) {
    throw Error(ErrorCode::validation, "attribute scatter takes sd_liking or sd_jar");
  }
  auto xv = [&](const AttributeTau& a) {
    return x_field == SummaryField::sd_liking ? a.sd_liking : a.sd_jar;
  };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& a : taus) {
    xmin = std::min(xmin, xv(a));
    xmax = std::max(xmax, xv(a));
    ymin = std::min(ymin, a.tau.tau_c);
    ymax = std::max(ymax, a.tau.tau_c);
  }
  const Axis x = nice_axis(xmin, xmax, kPlotLeft, kPlotRight);
  const Axis y = nice_axis(ymin, ymax, kPlotBottom, kPlotTop);

  Svg svg(fmt::format("Attribute tau_c against {}", field_title(x_field)));
  draw_frame(svg, x, y, field_title(x_field), "Kendall tau_c");
  std::string csv = "attribute,x,tau_c\n";
  for (const auto& a : taus) {
    svg.circle(x(xv(a)), y(a.tau.tau_c), 5, kConsistentColour);
    svg.text(x(xv(a)) + 7, y(a.tau.tau_c) - 7, a.attribute, "start", 10);
    csv += fmt::format("{},{},{}\n", csv_escape(a.attribute), full(xv(a)), full(a.tau.tau_c));
  }
  draw_trend(svg, x, y, line);
  return Chart{fmt::format("attribute_{}", to_string(x_field)), svg.finish(), std::move(csv),
               {{"_trend", trend_csv(line)}}};
}

std::optional<Chart> group_ratio_chart(std::span<const GroupRatioCell> cells,
                                       std::string_view x_label, std::string_view y_label) {
  std::size_t max_total = 0;
  for (const auto& c : cells) {
    max_total = std::max(max_total, c.consistent + c.inconsistent + c.unlabeled);
  }
  if (max_total == 0) return std::nullopt;
  const Axis x = integer_axis(LikingScore::kMin, LikingScore::kMax, kPlotLeft, kPlotRight);
  const Axis y = integer_axis(LikingScore::kMin, LikingScore::kMax, kPlotBottom, kPlotTop);

  Svg svg("Consistent share of assessors per score cell");
  draw_frame(svg, x, y, x_label, y_label);
  std::string csv = "x,y,consistent,inconsistent,unclassifiable,consistent_share\n";
  for (const auto& c : cells) {
    const std::size_t labelled = c.consistent + c.inconsistent;
    const std::size_t total = labelled + c.unlabeled;
    if (total == 0) continue;
    const double radius =
        kMaxBubbleRadius * std::sqrt(static_cast<double>(total) / static_cast<double>(max_total));
    std::string share = "NA";
    std::string colour(kNeutralColour);
    if (labelled > 0) {
      const double s = static_cast<double>(c.consistent) / static_cast<double>(labelled);
      share = full(s);
      // Blend from red (all inconsistent) to blue (all consistent).
      const auto mix = [s](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * s)); };
      colour = fmt::format("#{:02x}{:02x}{:02x}", mix(0xd6, 0x1f), mix(0x27, 0x77), mix(0x28, 0xb4));
    }
    svg.circle(x(c.x), y(c.y), radius, colour);
    csv += fmt::format("{},{},{},{},{},{}\n", c.x, c.y, c.consistent, c.inconsistent, c.unlabeled,
                       share);
  }
  return Chart{"group_ratio", svg.finish(), std::move(csv), {}};
}

std::vector<std::filesystem::path> emit_plots(const AnalysisReport& report,
                                              const std::filesystem::path& out_dir) {
  const auto dir = out_dir / "plots";
  std::vector<std::filesystem::path> written;
  std::vector<std::string> notes;
  auto put = [&](const std::filesystem::path& path, const std::string& content) {
    write_text_file(path, content);
    written.push_back(path);
  };
  auto save = [&](std::optional<Chart> chart, std::string_view what, std::string_view why) {
    if (!chart) {
      notes.push_back(fmt::format("{}: omitted, {}", what, why));
      return;
    }
    put(dir / (chart->name + ".svg"), chart->svg);
    put(dir / (chart->name + ".csv"), chart->csv);
    for (const auto& [suffix, content] : chart->extra) {
      put(dir / (chart->name + suffix + ".csv"), content);
    }
  };

  save(bubble_chart(report.contingency), "bubble", "no paired evaluations");
  save(tau_histogram_chart(report.classification.histogram), "tau_histogram", "");
  for (auto field : {SummaryField::sd_liking, SummaryField::sd_jar, SummaryField::tie_free_pairs,
                     SummaryField::mean_liking, SummaryField::mean_jar}) {
    save(group_means_chart(report.summaries, field), fmt::format("group_{}", to_string(field)),
         "one of the assessor groups is empty");
  }
  for (const auto& s : report.scatters) {
    const auto what = fmt::format("scatter_{}", s.key);
    if (!s.value) {
      notes.push_back(fmt::format("{}: omitted, {}", what, s.error));
      continue;
    }
    save(scatter_chart(*s.value), what, "fewer than two assessors");
  }
  const std::pair<SummaryField, const Section<TrendLine>*> attribute_lines[] = {
      {SummaryField::sd_liking, &report.attribute_line_sd_liking},
      {SummaryField::sd_jar, &report.attribute_line_sd_jar}};
  for (const auto& [field, line] : attribute_lines) {
    const auto what = fmt::format("attribute_{}", to_string(field));
    if (!line->value) {
      notes.push_back(fmt::format("{}: omitted, {}", what, line->error));
      continue;
    }
    save(attribute_scatter_chart(report.attribute_taus, field, *line->value), what,
         "fewer than two attributes");
  }
  if (report.group_ratio.value) {
    save(group_ratio_chart(*report.group_ratio.value, report.config.taste_attribute,
                           report.config.response_attribute),
         "group_ratio", "no assessor rated both attributes");
  } else {
    notes.push_back(fmt::format("group_ratio: omitted, {}", report.group_ratio.error));
  }

  std::string text;
  for (const auto& n : notes) text += n + "\n";
  put(dir / "NOTES.txt", text);
  return written;
}

}  // namespace jarcon
