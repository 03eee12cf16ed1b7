#include "jarcon/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "jarcon/csv_io.hpp"
#include "jarcon/error.hpp"

namespace jarcon {

using nlohmann::ordered_json;

double round_sig6(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCode::io, fmt::format("cannot create directory '{}': {}",
                                           path.parent_path().string(), ec.message()));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw Error(ErrorCode::io, fmt::format("write failed for '{}'", path.string()));
}

namespace {

template <typename T, typename F>
Section<T> attempt(std::string key, F&& compute) {
  Section<T> s;
  s.key = std::move(key);
  try {
    s.value = compute();
  } catch (const Error& e) {
    s.error = e.what();
  }
  return s;
}

}  // namespace

AnalysisReport analyze(const Dataset& ds, const AnalysisConfig& config) {
  AnalysisReport r;
  r.config = config;
  r.header = ds.header();
  r.evaluation_count = ds.evaluations().size();
  r.liking_only_count = ds.liking_only().size();

  r.classification = classify_panel(ds, config.classify);
  r.summaries = summarize_assessors(
      ds, r.classification,
      {.include_liking_only = config.include_liking_only_in_summaries,
       .m_policy = config.classify.m_policy});

  const auto pairs = to_pairs(ds.evaluations());
  r.contingency = build_contingency(pairs, false);
  r.folded = r.contingency.fold();
  r.normalized = normalize_rows(r.contingency);
  r.panel_tau = attempt<TauResult>("panel", [&] { return tau_c_with_se(r.folded, config.classify.m_policy); });
  r.attribute_taus = attribute_taus(ds, config.classify.m_policy);

  if (!ds.empty()) {
    r.liking_stats = stats_table(ds, Scale::liking);
    if (!ds.evaluations().empty()) {
      r.jar_stats = stats_table(ds, Scale::jar);
      r.jar_tests = jar_zero_tests(ds, config.classify.alpha);
    }
  }

  for (auto field : {SummaryField::mean_liking, SummaryField::sd_liking, SummaryField::mean_jar,
                     SummaryField::sd_jar, SummaryField::tie_free_pairs}) {
    r.comparisons.push_back(attempt<GroupComparison>(std::string(to_string(field)), [&] {
      return compare_groups(r.summaries, field, config.classify.alpha);
    }));
  }

  r.attribute_model = attempt<GroupFits>("attributes", [&] {
    return group_regressions(ds, r.classification, config.response_attribute, ds.attributes());
  });
  r.taste_model = attempt<GroupFits>("taste", [&] {
    const std::vector<std::string> predictors{config.taste_attribute};
    return group_regressions(ds, r.classification, config.response_attribute, predictors);
  });

  for (auto field : {SummaryField::sd_liking, SummaryField::sd_jar, SummaryField::tie_free_pairs}) {
    r.scatters.push_back(attempt<ScatterSeries>(std::string(to_string(field)), [&] {
      return scatter_series(r.summaries, field);
    }));
  }

  std::vector<double> attr_tau, attr_sd_liking, attr_sd_jar;
  for (const auto& a : r.attribute_taus) {
    attr_tau.push_back(a.tau.tau_c);
    attr_sd_liking.push_back(a.sd_liking);
    attr_sd_jar.push_back(a.sd_jar);
  }
  r.attribute_line_sd_liking =
      attempt<TrendLine>("sd_liking", [&] { return fit_line(attr_sd_liking, attr_tau); });
  r.attribute_line_sd_jar =
      attempt<TrendLine>("sd_jar", [&] { return fit_line(attr_sd_jar, attr_tau); });

  r.group_ratio = attempt<std::vector<GroupRatioCell>>("taste_vs_response", [&] {
    return group_ratio_cells(ds, r.classification, config.taste_attribute,
                             config.response_attribute);
  });
  return r;
}

namespace {

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig6(v);
}

ordered_json opt_num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(); }

ordered_json tau_json(const TauResult& t) {
  ordered_json j;
  j["tau_c"] = num(t.tau_c);
  j["n"] = t.n;
  j["m"] = t.m;
  j["concordant"] = t.pairs.concordant;
  j["discordant"] = t.pairs.discordant;
  j["tied"] = t.pairs.tied;
  j["se"] = opt_num(t.se);
  return j;
}

ordered_json ttest_json(const TTestResult& t) {
  ordered_json j;
  j["statistic"] = num(t.statistic);
  j["df"] = num(t.df);
  j["p_value"] = num(t.p_value);
  j["significant"] = t.significant;
  j["degenerate"] = t.degenerate;
  return j;
}

ordered_json stats_json(const StatsTable& t) {
  ordered_json j;
  j["attributes"] = t.attributes;
  j["samples"] = t.samples;
  auto cell = [](const std::optional<CellStats>& c) -> ordered_json {
    if (!c) return nullptr;
    ordered_json o;
    o["mean"] = num(c->mean);
    o["sd"] = opt_num(c->sd);
    o["n"] = c->n;
    return o;
  };
  ordered_json rows = ordered_json::array();
  for (std::size_t a = 0; a < t.attributes.size(); ++a) {
    ordered_json row;
    row["attribute"] = t.attributes[a];
    ordered_json cells = ordered_json::array();
    for (const auto& c : t.cells[a]) cells.push_back(cell(c));
    row["cells"] = std::move(cells);
    row["all"] = cell(t.pooled[a]);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ordered_json table_json(const ContingencyTable& t) {
  ordered_json j;
  ordered_json rows = ordered_json::array(), cols = ordered_json::array();
  for (int r = 0; r < t.rows(); ++r) rows.push_back(t.row_level(r));
  for (int c = 0; c < t.cols(); ++c) cols.push_back(t.col_level(c));
  j["folded"] = t.folded();
  j["row_levels"] = std::move(rows);
  j["col_levels"] = std::move(cols);
  ordered_json counts = ordered_json::array();
  for (int r = 0; r < t.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < t.cols(); ++c) row.push_back(t.count(r, c));
    counts.push_back(std::move(row));
  }
  j["counts"] = std::move(counts);
  j["n"] = t.total();
  return j;
}

ordered_json fit_json(const RegressionFit& f) {
  ordered_json j;
  ordered_json coefs = ordered_json::array();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    ordered_json c;
    c["term"] = f.names[i];
    c["estimate"] = num(f.coefficients[i]);
    c["std_error"] = num(f.standard_errors[i]);
    c["t_value"] = num(f.t_values[i]);
    c["p_value"] = num(f.p_values[i]);
    coefs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coefs);
  j["r_squared"] = num(f.r_squared);
  j["adj_r_squared"] = num(f.adj_r_squared);
  j["residual_se"] = num(f.residual_se);
  j["n"] = f.n;
  j["df_resid"] = f.df_resid;
  return j;
}

ordered_json line_json(const TrendLine& l) {
  ordered_json j;
  j["intercept"] = num(l.intercept);
  j["slope"] = num(l.slope);
  j["r_squared"] = num(l.r_squared);
  return j;
}

template <typename T, typename F>
ordered_json section_json(const Section<T>& s, F&& render) {
  ordered_json j;
  if (s.value) {
    j = render(*s.value);
  } else {
    j["error"] = s.error;
  }
  return j;
}

ordered_json fits_json(const GroupFits& g) {
  ordered_json j;
  j["consistent"] = fit_json(g.consistent);
  j["inconsistent"] = fit_json(g.inconsistent);
  j["all"] = fit_json(g.all);
  return j;
}

}  // namespace

ordered_json to_json(const AnalysisReport& r) {
  ordered_json j;
  {
    ordered_json meta;
    meta["tool"] = "jarcon";
    meta["version"] = kToolVersion;
    meta["alpha"] = num(r.config.classify.alpha);
    meta["method"] = to_string(r.config.classify.method);
    meta["permutations"] = r.config.classify.method == TestMethod::permutation
                               ? ordered_json(r.config.classify.permutations)
                               : ordered_json();
    meta["seed"] = r.config.classify.seed;
    meta["m_policy"] = to_string(r.config.classify.m_policy);
    meta["response_attribute"] = r.config.response_attribute;
    meta["taste_attribute"] = r.config.taste_attribute;
    meta["summaries_include_liking_only"] = r.config.include_liking_only_in_summaries;
    ordered_json extra = ordered_json::object();
    for (const auto& [k, v] : r.config.metadata) extra[k] = v;
    meta["provenance"] = std::move(extra);
    j["metadata"] = std::move(meta);
  }
  {
    ordered_json d;
    d["assessors"] = r.header.assessors.size();
    d["samples"] = r.header.samples;
    d["attributes"] = r.header.attributes;
    d["liking_only_attributes"] = r.header.liking_only_attributes;
    d["paired_evaluations"] = r.evaluation_count;
    d["liking_only_records"] = r.liking_only_count;
    j["dataset"] = std::move(d);
  }
  {
    const auto& c = r.classification;
    ordered_json cls;
    cls["consistent"] = c.consistent;
    cls["inconsistent"] = c.inconsistent;
    cls["unclassifiable"] = c.unclassifiable;
    ordered_json hist = ordered_json::array();
    for (const auto& b : c.histogram) {
      hist.push_back({{"lower", num(b.lower)}, {"upper", num(b.upper)}, {"count", b.count}});
    }
    cls["histogram"] = std::move(hist);
    ordered_json assessors = ordered_json::array();
    for (const auto& a : c.assessors) {
      ordered_json o;
      o["assessor_id"] = a.assessor_id;
      o["pairs"] = a.pairs;
      if (a.verdict) {
        o["label"] = to_string(a.verdict->label);
        o["p_value"] = num(a.verdict->p_value);
        o["tau"] = tau_json(a.verdict->tau);
      } else {
        o["label"] = "unclassifiable";
        o["reason"] = a.reason;
      }
      assessors.push_back(std::move(o));
    }
    cls["assessors"] = std::move(assessors);
    j["classification"] = std::move(cls);
  }
  {
    ordered_json s = ordered_json::array();
    for (const auto& a : r.summaries) {
      ordered_json o;
      o["assessor_id"] = a.assessor_id;
      o["label"] = a.label ? ordered_json(to_string(*a.label)) : ordered_json();
      o["tau_c"] = num(a.tau.tau_c);
      o["mean_liking"] = num(a.mean_liking);
      o["sd_liking"] = num(a.sd_liking);
      o["mean_jar"] = num(a.mean_jar);
      o["sd_jar"] = num(a.sd_jar);
      o["tie_free_pairs"] = a.tie_free_pairs;
      s.push_back(std::move(o));
    }
    j["assessor_summaries"] = std::move(s);
  }
  {
    ordered_json c;
    c["table"] = table_json(r.contingency);
    c["folded"] = table_json(r.folded);
    ordered_json norm = ordered_json::array();
    for (std::size_t row = 0; row < r.normalized.proportions.size(); ++row) {
      ordered_json vals = ordered_json::array();
      for (double p : r.normalized.proportions[row]) vals.push_back(num(p));
      norm.push_back(std::move(vals));
    }
    c["row_proportions"] = std::move(norm);
    c["panel_tau"] = section_json(r.panel_tau, tau_json);
    j["contingency"] = std::move(c);
  }
  {
    ordered_json a = ordered_json::array();
    for (const auto& t : r.attribute_taus) {
      ordered_json o;
      o["attribute"] = t.attribute;
      o["tau"] = tau_json(t.tau);
      o["sd_liking"] = num(t.sd_liking);
      o["sd_jar"] = num(t.sd_jar);
      a.push_back(std::move(o));
    }
    j["attribute_tau"] = std::move(a);
  }
  {
    ordered_json d;
    d["liking"] = r.liking_stats ? stats_json(*r.liking_stats) : ordered_json();
    d["jar"] = r.jar_stats ? stats_json(*r.jar_stats) : ordered_json();
    if (r.jar_tests) {
      ordered_json tests = ordered_json::array();
      for (std::size_t a = 0; a < r.jar_tests->cells.size(); ++a) {
        ordered_json row = ordered_json::array();
        for (const auto& t : r.jar_tests->cells[a]) row.push_back(t ? ttest_json(*t) : ordered_json());
        const auto& pooled = r.jar_tests->pooled[a];
        tests.push_back({{"cells", std::move(row)}, {"all", pooled ? ttest_json(*pooled) : ordered_json()}});
      }
      d["jar_zero_tests"] = std::move(tests);
    } else {
      d["jar_zero_tests"] = nullptr;
    }
    j["descriptives"] = std::move(d);
  }
  {
    ordered_json g = ordered_json::object();
    for (const auto& s : r.comparisons) {
      g[s.key] = section_json(s, [](const GroupComparison& c) {
        ordered_json o;
        o["n_consistent"] = c.n_consistent;
        o["n_inconsistent"] = c.n_inconsistent;
        o["mean_consistent"] = num(c.mean_consistent);
        o["mean_inconsistent"] = num(c.mean_inconsistent);
        o["welch"] = ttest_json(c.test);
        return o;
      });
    }
    j["group_comparisons"] = std::move(g);
  }
  {
    ordered_json reg;
    reg["attributes"] = section_json(r.attribute_model, fits_json);
    reg["taste"] = section_json(r.taste_model, fits_json);
    j["regressions"] = std::move(reg);
  }
  {
    ordered_json sc = ordered_json::object();
    for (const auto& s : r.scatters) {
      sc[s.key] = section_json(s, [](const ScatterSeries& series) {
        ordered_json o;
        o["points"] = {{"consistent", series.consistent.size()},
                       {"inconsistent", series.inconsistent.size()},
                       {"unlabeled", series.unlabeled.size()}};
        o["line"] = line_json(series.line);
        return o;
      });
    }
    sc["attribute_sd_liking"] = section_json(r.attribute_line_sd_liking, line_json);
    sc["attribute_sd_jar"] = section_json(r.attribute_line_sd_jar, line_json);
    j["trend_lines"] = std::move(sc);
  }
  j["group_ratio"] = section_json(r.group_ratio, [](const std::vector<GroupRatioCell>& cells) {
    ordered_json o = ordered_json::array();
    for (const auto& c : cells) {
      o.push_back({{"x", c.x},
                   {"y", c.y},
                   {"consistent", c.consistent},
                   {"inconsistent", c.inconsistent},
                   {"unlabeled", c.unlabeled}});
    }
    return o;
  });
  return j;
}

std::string render_fit(const RegressionFit& f) {
  std::size_t width = 11;
  for (const auto& n : f.names) width = std::max(width, n.size());
  auto cell = [](double v, const char* spec) {
    if (std::isnan(v)) return std::string("NA");
    return fmt::format(fmt::runtime(spec), v);
  };
  std::string out = "Coefficients:\n";
  out += fmt::format("{:<{}} {:>10} {:>10} {:>8} {:>10}\n", "", width, "Estimate", "Std. Error",
                     "t value", "Pr(>|t|)");
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    out += fmt::format("{:<{}} {:>10} {:>10} {:>8} {:>10}\n", f.names[i], width,
                       cell(f.coefficients[i], "{:.5f}"), cell(f.standard_errors[i], "{:.5f}"),
                       cell(f.t_values[i], "{:.3f}"), cell(f.p_values[i], "{:.3g}"));
  }
  out += fmt::format("\nMultiple R-squared: {:.4f},\tAdjusted R-squared: {:.4f}\n", f.r_squared,
                     f.adj_r_squared);
  out += fmt::format("Observations: {}, residual df: {}\n", f.n, f.df_resid);
  return out;
}

namespace {

std::string fixed2(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? fmt::format("{:.2f}", *v) : "";
}

std::string g6(double v) { return std::isfinite(v) ? fmt::format("{:.6g}", v) : "NA"; }

// Attributes as rows, samples as columns, "All" last; one row per statistic.
std::string stats_csv(const StatsTable& t, const JarTestGrid* tests) {
  std::string out = "attribute,statistic";
  for (const auto& s : t.samples) out += "," + csv_escape(s);
  out += ",All\n";
  for (std::size_t a = 0; a < t.attributes.size(); ++a) {
    auto row = [&](std::string_view stat, auto&& value) {
      out += csv_escape(t.attributes[a]) + "," + std::string(stat);
      for (std::size_t s = 0; s < t.samples.size(); ++s) out += "," + value(t.cells[a][s], a, s, false);
      out += "," + value(t.pooled[a], a, std::size_t{0}, true) + "\n";
    };
    row("mean", [](const std::optional<CellStats>& c, auto, auto, bool) {
      return c ? fixed2(c->mean) : std::string();
    });
    row("sd", [](const std::optional<CellStats>& c, auto, auto, bool) {
      return c ? fixed2(c->sd) : std::string();
    });
    if (tests) {
      row("significant_vs_zero", [&](const std::optional<CellStats>&, std::size_t at,
                                     std::size_t s, bool pooled) -> std::string {
        const auto& t = pooled ? tests->pooled[at] : tests->cells[at][s];
        if (!t) return "";
        return t->significant ? "1" : "0";
      });
    }
  }
  return out;
}

std::string contingency_csv(const ContingencyTable& t) {
  std::string out = "liking";
  for (int c = 0; c < t.cols(); ++c) out += fmt::format(",{}", t.col_level(c));
  out += "\n";
  for (int r = 0; r < t.rows(); ++r) {
    out += fmt::format("{}", t.row_level(r));
    for (int c = 0; c < t.cols(); ++c) out += fmt::format(",{}", t.count(r, c));
    out += "\n";
  }
  return out;
}

std::string normalized_csv(const ContingencyTable& t, const NormalizedTable& n) {
  std::string out = "liking";
  for (int c = 0; c < t.cols(); ++c) out += fmt::format(",{}", t.col_level(c));
  out += "\n";
  for (int r = 0; r < t.rows(); ++r) {
    out += fmt::format("{}", t.row_level(r));
    for (double p : n.proportions[static_cast<std::size_t>(r)]) {
      out += fmt::format(",{:.2f}%", 100.0 * p);
    }
    out += "\n";
  }
  return out;
}

std::string attribute_tau_csv(const std::vector<AttributeTau>& taus) {
  std::string out = "attribute,tau_c,se,n,sd_liking,sd_jar\n";
  for (const auto& a : taus) {
    out += fmt::format("{},{},{},{},{},{}\n", csv_escape(a.attribute), g6(a.tau.tau_c),
                       a.tau.se ? g6(*a.tau.se) : "NA", a.tau.n, g6(a.sd_liking), g6(a.sd_jar));
  }
  return out;
}

std::string assessors_csv(const AnalysisReport& r) {
  std::string out = "assessor,pairs,label,tau_c,p_value,se,concordant,discordant,tied\n";
  for (const auto& a : r.classification.assessors) {
    if (!a.verdict) {
      out += fmt::format("{},{},unclassifiable,NA,NA,NA,NA,NA,NA\n", csv_escape(a.assessor_id),
                         a.pairs);
      continue;
    }
    const auto& v = *a.verdict;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_escape(a.assessor_id), a.pairs,
                       to_string(v.label), g6(v.tau.tau_c), g6(v.p_value),
                       v.tau.se ? g6(*v.tau.se) : "NA", v.tau.pairs.concordant,
                       v.tau.pairs.discordant, v.tau.pairs.tied);
  }
  return out;
}

std::string summaries_csv(const AnalysisReport& r) {
  std::string out = "assessor,label,tau_c,mean_liking,sd_liking,mean_jar,sd_jar,tie_free_pairs\n";
  for (const auto& s : r.summaries) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_escape(s.assessor_id),
                       s.label ? to_string(*s.label) : "unclassifiable", g6(s.tau.tau_c),
                       g6(s.mean_liking), g6(s.sd_liking), g6(s.mean_jar), g6(s.sd_jar),
                       s.tie_free_pairs);
  }
  return out;
}

std::string comparisons_csv(const AnalysisReport& r) {
  std::string out =
      "field,n_consistent,n_inconsistent,mean_consistent,mean_inconsistent,t,df,p_value,significant,note\n";
  for (const auto& s : r.comparisons) {
    if (!s.value) {
      out += fmt::format("{},,,,,,,,,{}\n", s.key, csv_escape(s.error));
      continue;
    }
    const auto& c = *s.value;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", s.key, c.n_consistent, c.n_inconsistent,
                       g6(c.mean_consistent), g6(c.mean_inconsistent), g6(c.test.statistic),
                       g6(c.test.df), g6(c.test.p_value), c.test.significant ? 1 : 0,
                       c.test.degenerate ? "zero variance" : "");
  }
  return out;
}

std::string regressions_csv(const AnalysisReport& r) {
  std::string out =
      "model,group,term,estimate,std_error,t_value,p_value,r_squared,adj_r_squared,n,note\n";
  for (const auto* section : {&r.attribute_model, &r.taste_model}) {
    if (!section->value) {
      out += fmt::format("{},,,,,,,,,,{}\n", section->key, csv_escape(section->error));
      continue;
    }
    const std::pair<const char*, const RegressionFit*> groups[] = {
        {"consistent", &section->value->consistent},
        {"inconsistent", &section->value->inconsistent},
        {"all", &section->value->all}};
    for (const auto& [group, fit] : groups) {
      for (std::size_t i = 0; i < fit->names.size(); ++i) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},\n", section->key, group,
                           csv_escape(fit->names[i]), g6(fit->coefficients[i]),
                           g6(fit->standard_errors[i]), g6(fit->t_values[i]),
                           g6(fit->p_values[i]), g6(fit->r_squared), g6(fit->adj_r_squared),
                           fit->n);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const AnalysisReport& report,
                                               const std::filesystem::path& out_dir,
                                               ReportFormat format) {
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& rel, const std::string& content) {
    const auto path = out_dir / rel;
    write_text_file(path, content);
    written.push_back(path);
  };
  if (format == ReportFormat::json) {
    write("report.json", to_json(report).dump(2) + "\n");
    return written;
  }
  if (report.liking_stats) write("tables/liking_stats.csv", stats_csv(*report.liking_stats, nullptr));
  if (report.jar_stats) {
    write("tables/jar_stats.csv",
          stats_csv(*report.jar_stats, report.jar_tests ? &*report.jar_tests : nullptr));
  }
  write("tables/contingency.csv", contingency_csv(report.contingency));
  write("tables/contingency_folded.csv", contingency_csv(report.folded));
  write("tables/contingency_normalized.csv", normalized_csv(report.contingency, report.normalized));
  write("tables/attribute_tau.csv", attribute_tau_csv(report.attribute_taus));
  write("tables/assessors.csv", assessors_csv(report));
  write("tables/assessor_summaries.csv", summaries_csv(report));
  write("tables/group_comparisons.csv", comparisons_csv(report));
  write("tables/regressions.csv", regressions_csv(report));
  std::string fits;
  for (const auto* section : {&report.attribute_model, &report.taste_model}) {
    if (!section->value) continue;
    fits += fmt::format("== {} model, consistent assessors ==\n{}\n", section->key,
                        render_fit(section->value->consistent));
    fits += fmt::format("== {} model, inconsistent assessors ==\n{}\n", section->key,
                        render_fit(section->value->inconsistent));
    fits += fmt::format("== {} model, all assessors ==\n{}\n", section->key,
                        render_fit(section->value->all));
  }
  write("tables/regressions.txt", fits);
  return written;
}

}  // namespace jarcon
