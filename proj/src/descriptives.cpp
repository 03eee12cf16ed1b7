#include "jarcon/descriptives.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "jarcon/distributions.hpp"
#include "jarcon/error.hpp"

namespace jarcon {

CellStats cell_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::insufficient_data, "statistics of an empty cell");
  CellStats out;
  out.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(out.n);
  if (out.n >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(out.n - 1));
  }
  return out;
}

namespace {

// Values grouped as [attribute][sample] following the table row order.
struct Grid {
  std::vector<std::string> attributes;
  std::vector<std::string> samples;
  std::vector<std::vector<std::vector<double>>> values;
};

Grid collect(const Dataset& ds, Scale scale) {
  Grid g;
  g.samples = ds.samples();
  g.attributes = ds.attributes();
  if (scale == Scale::liking) {
    g.attributes.insert(g.attributes.end(), ds.liking_only_attributes().begin(),
                        ds.liking_only_attributes().end());
  }
  std::unordered_map<std::string, std::size_t> attr_index, sample_index;
  for (std::size_t i = 0; i < g.attributes.size(); ++i) attr_index[g.attributes[i]] = i;
  for (std::size_t i = 0; i < g.samples.size(); ++i) sample_index[g.samples[i]] = i;
  g.values.assign(g.attributes.size(), std::vector<std::vector<double>>(g.samples.size()));
  for (const auto& e : ds.evaluations()) {
    const double v = scale == Scale::liking ? e.liking.value() : e.jar.value();
    g.values[attr_index.at(e.attribute)][sample_index.at(e.sample_id)].push_back(v);
  }
  if (scale == Scale::liking) {
    for (const auto& r : ds.liking_only()) {
      g.values[attr_index.at(r.attribute)][sample_index.at(r.sample_id)].push_back(
          r.liking.value());
    }
  }
  return g;
}

std::vector<double> concat(const std::vector<std::vector<double>>& cells) {
  std::vector<double> all;
  for (const auto& c : cells) all.insert(all.end(), c.begin(), c.end());
  return all;
}

}  // namespace

StatsTable stats_table(const Dataset& ds, Scale scale) {
  if (ds.empty()) throw Error(ErrorCode::insufficient_data, "descriptive statistics of an empty dataset");
  const Grid g = collect(ds, scale);
  StatsTable t;
  t.scale = scale;
  t.attributes = g.attributes;
  t.samples = g.samples;
  t.cells.resize(g.attributes.size());
  for (std::size_t a = 0; a < g.attributes.size(); ++a) {
    for (const auto& cell : g.values[a]) {
      t.cells[a].push_back(cell.empty() ? std::nullopt : std::optional(cell_stats(cell)));
    }
    const auto all = concat(g.values[a]);
    t.pooled.push_back(all.empty() ? std::nullopt : std::optional(cell_stats(all)));
  }
  return t;
}

TTestResult one_sample_t_test(double mean, double sd, std::size_t n, double alpha) {
  if (n < 2) {
    throw Error(ErrorCode::insufficient_data, fmt::format("t-test needs n >= 2, got {}", n));
  }
  TTestResult out;
  out.df = static_cast<double>(n - 1);
  if (sd == 0.0) {
    out.degenerate = true;
    if (mean == 0.0) {
      out.statistic = 0.0;
      out.p_value = 1.0;
    } else {
      out.statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
      out.p_value = 0.0;
    }
  } else {
    out.statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
    out.p_value = student_t_two_sided_p(out.statistic, out.df);
  }
  out.significant = out.p_value < alpha;
  return out;
}

TTestResult jar_zero_test(std::span<const double> values, double alpha) {
  if (values.size() < 2) {
    throw Error(ErrorCode::insufficient_data,
                fmt::format("t-test needs n >= 2, got {}", values.size()));
  }
  const auto s = cell_stats(values);
  return one_sample_t_test(s.mean, *s.sd, s.n, alpha);
}

JarTestGrid jar_zero_tests(const Dataset& ds, double alpha) {
  const Grid g = collect(ds, Scale::jar);
  JarTestGrid out;
  auto test = [&](const std::vector<double>& v) -> std::optional<TTestResult> {
    if (v.size() < 2) return std::nullopt;
    return jar_zero_test(v, alpha);
  };
  for (const auto& row : g.values) {
    std::vector<std::optional<TTestResult>> cells;
    for (const auto& cell : row) cells.push_back(test(cell));
    out.cells.push_back(std::move(cells));
    out.pooled.push_back(test(concat(row)));
  }
  return out;
}

NormalizedTable normalize_rows(const ContingencyTable& t) {
  NormalizedTable out;
  out.proportions.assign(static_cast<std::size_t>(t.rows()),
                         std::vector<double>(static_cast<std::size_t>(t.cols()), 0.0));
  out.zero_row.assign(static_cast<std::size_t>(t.rows()), false);
  for (int r = 0; r < t.rows(); ++r) {
    const auto total = t.row_total(r);
    if (total == 0) {
      out.zero_row[static_cast<std::size_t>(r)] = true;
      continue;
    }
    for (int c = 0; c < t.cols(); ++c) {
      out.proportions[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<double>(t.count(r, c)) / static_cast<double>(total);
    }
  }
  return out;
}

std::vector<HistogramBin> tau_histogram(std::span<const double> taus, double bin_width) {
  if (!(bin_width > 0.0)) throw Error(ErrorCode::range, "histogram bin width must be positive");
  // Tolerance absorbs the representation error of edges such as -1 + 3 * 0.1.
  constexpr double kEdgeSlack = 1e-9;
  const auto bins = static_cast<std::size_t>(std::ceil(2.0 / bin_width - kEdgeSlack));
  std::vector<HistogramBin> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out[k].lower = -1.0 + static_cast<double>(k) * bin_width;
    out[k].upper = std::min(1.0, -1.0 + static_cast<double>(k + 1) * bin_width);
  }
  for (double tau : taus) {
    if (!(tau >= -1.0 - kEdgeSlack && tau <= 1.0 + kEdgeSlack)) {
      throw Error(ErrorCode::range, fmt::format("tau value {} outside [-1, 1]", tau));
    }
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor((tau + 1.0) / bin_width + kEdgeSlack)));
    if (k >= bins) k = bins - 1;
    ++out[k].count;
  }
  return out;
}

}  // namespace jarcon
