#include "jarcon/modeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "jarcon/distributions.hpp"
#include "jarcon/error.hpp"

namespace jarcon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRankTolerance = 1e-10;

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  return *cell_stats(v).sd;
}

}  // namespace

std::vector<AssessorSummary> summarize_assessors(const Dataset& ds,
                                                 const PanelClassification& verdicts,
                                                 const SummaryOptions& options) {
  std::unordered_map<std::string_view, std::vector<const Evaluation*>> paired;
  std::unordered_map<std::string_view, std::vector<const LikingOnlyRecord*>> liking_only;
  for (const auto& e : ds.evaluations()) paired[e.assessor_id].push_back(&e);
  for (const auto& r : ds.liking_only()) liking_only[r.assessor_id].push_back(&r);

  std::vector<AssessorSummary> out;
  for (const auto& id : ds.assessors()) {
    const auto& evals = paired[id];
    if (evals.size() < 2) continue;
    std::vector<ScorePair> pairs;
    std::vector<double> likings, jars;
    for (const auto* e : evals) {
      pairs.push_back({e->liking.value(), e->jar.value()});
      likings.push_back(e->liking.value());
      jars.push_back(e->jar.value());
    }
    if (options.include_liking_only) {
      for (const auto* r : liking_only[id]) likings.push_back(r->liking.value());
    }
    AssessorSummary s;
    s.assessor_id = id;
    if (const auto* v = verdicts.find(id); v && v->verdict) {
      s.tau = v->verdict->tau;
      s.label = v->verdict->label;
    } else {
      const auto table = build_contingency(pairs, true);
      if (table_m(table, options.m_policy) < 2) continue;
      s.tau = tau_c_with_se(table, options.m_policy);
    }
    s.mean_liking = cell_stats(likings).mean;
    s.sd_liking = sample_sd(likings);
    s.mean_jar = cell_stats(jars).mean;
    s.sd_jar = sample_sd(jars);
    s.tie_free_pairs = s.tau.pairs.concordant + s.tau.pairs.discordant;
    out.push_back(std::move(s));
  }
  return out;
}

std::string_view to_string(SummaryField field) noexcept {
  switch (field) {
    case SummaryField::mean_liking: return "mean_liking";
    case SummaryField::sd_liking: return "sd_liking";
    case SummaryField::mean_jar: return "mean_jar";
    case SummaryField::sd_jar: return "sd_jar";
    case SummaryField::tie_free_pairs: return "tie_free_pairs";
    case SummaryField::tau_c: return "tau_c";
  }
  return "unknown";
}

SummaryField parse_summary_field(std::string_view name) {
  for (auto f : {SummaryField::mean_liking, SummaryField::sd_liking, SummaryField::mean_jar,
                 SummaryField::sd_jar, SummaryField::tie_free_pairs, SummaryField::tau_c}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::validation, fmt::format("unknown summary field '{}'", name));
}

double field_value(const AssessorSummary& s, SummaryField field) {
  switch (field) {
    case SummaryField::mean_liking: return s.mean_liking;
    case SummaryField::sd_liking: return s.sd_liking;
    case SummaryField::mean_jar: return s.mean_jar;
    case SummaryField::sd_jar: return s.sd_jar;
    case SummaryField::tie_free_pairs: return static_cast<double>(s.tie_free_pairs);
    case SummaryField::tau_c: return s.tau.tau_c;
  }
  return kNaN;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::insufficient_data,
                fmt::format("Welch test needs two groups of size >= 2, got {} and {}", a.size(),
                            b.size()));
  }
  const auto sa = cell_stats(a);
  const auto sb = cell_stats(b);
  const double na = static_cast<double>(sa.n);
  const double nb = static_cast<double>(sb.n);
  const double qa = *sa.sd * *sa.sd / na;
  const double qb = *sb.sd * *sb.sd / nb;
  const double diff = sa.mean - sb.mean;
  TTestResult out;
  if (qa + qb == 0.0) {
    out.degenerate = true;
    out.df = na + nb - 2.0;
    out.statistic = diff == 0.0 ? 0.0 : (diff > 0 ? kInf : -kInf);
    out.p_value = diff == 0.0 ? 1.0 : 0.0;
  } else {
    out.statistic = diff / std::sqrt(qa + qb);
    out.df = (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    out.p_value = student_t_two_sided_p(out.statistic, out.df);
  }
  out.significant = out.p_value < alpha;
  return out;
}

GroupComparison compare_groups(std::span<const AssessorSummary> summaries, SummaryField field,
                               double alpha) {
  std::vector<double> consistent, inconsistent;
  for (const auto& s : summaries) {
    if (!s.label) continue;
    (*s.label == ConsistencyLabel::consistent ? consistent : inconsistent)
        .push_back(field_value(s, field));
  }
  GroupComparison out;
  out.field = field;
  out.n_consistent = consistent.size();
  out.n_inconsistent = inconsistent.size();
  out.test = welch_t_test(consistent, inconsistent, alpha);
  out.mean_consistent = cell_stats(consistent).mean;
  out.mean_inconsistent = cell_stats(inconsistent).mean;
  return out;
}

std::optional<double> RegressionFit::coefficient(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return coefficients[i];
  }
  return std::nullopt;
}

RegressionFit ols(std::span<const double> y, std::span<const Predictor> predictors,
                  const OlsOptions& options) {
  const auto n = y.size();
  const auto p = predictors.size();
  const auto k = p + (options.intercept ? 1 : 0);
  for (const auto& pred : predictors) {
    if (pred.values.size() != n) {
      throw Error(ErrorCode::validation,
                  fmt::format("predictor '{}' has {} values, response has {}", pred.name,
                              pred.values.size(), n));
    }
  }
  if (k == 0) throw Error(ErrorCode::validation, "regression without any column");
  if (n < k || (n == k && !options.allow_saturated)) {
    throw Error(ErrorCode::insufficient_data,
                fmt::format("regression with {} column(s) needs more than {} rows, got {}", k, k,
                            n));
  }

  RegressionFit fit;
  fit.intercept = options.intercept;
  fit.n = n;
  if (options.intercept) fit.names.emplace_back("(Intercept)");
  for (const auto& pred : predictors) fit.names.push_back(pred.name);

  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  Eigen::VectorXd Y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    Y(row) = y[i];
    Eigen::Index col = 0;
    if (options.intercept) X(row, col++) = 1.0;
    for (const auto& pred : predictors) X(row, col++) = pred.values[i];
  }

  // Grow the design one column at a time so the error can name the column
  // that introduces the dependency.
  for (Eigen::Index c = 1; c <= X.cols(); ++c) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X.leftCols(c));
    const auto& sv = svd.singularValues();
    const double largest = sv.maxCoeff();
    if (largest == 0.0 || sv.minCoeff() / largest < kRankTolerance) {
      throw Error(ErrorCode::collinearity,
                  fmt::format("design matrix is rank-deficient at column '{}'",
                              fit.names[static_cast<std::size_t>(c - 1)]));
    }
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd beta = qr.solve(Y);
  const Eigen::VectorXd resid = Y - X * beta;
  const double rss = resid.squaredNorm();
  fit.df_resid = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k);

  const Eigen::MatrixXd R =
      qr.matrixQR().topLeftCorner(X.cols(), X.cols()).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd R_inv = R.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(X.cols(), X.cols()));
  const Eigen::MatrixXd unscaled_cov = R_inv * R_inv.transpose();

  const double sigma2 = fit.df_resid > 0 ? rss / static_cast<double>(fit.df_resid) : kNaN;
  fit.residual_se = std::sqrt(sigma2);
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double coef = beta(j);
    const double se = std::sqrt(sigma2 * unscaled_cov(j, j));
    fit.coefficients.push_back(coef);
    fit.standard_errors.push_back(se);
    double t = kNaN;
    if (se > 0.0) {
      t = coef / se;
    } else if (se == 0.0 && coef != 0.0) {
      t = coef > 0 ? kInf : -kInf;
    }
    fit.t_values.push_back(t);
    fit.p_values.push_back(fit.df_resid > 0 && !std::isnan(t)
                               ? student_t_two_sided_p(t, static_cast<double>(fit.df_resid))
                               : kNaN);
  }

  double tss = 0.0;
  if (options.intercept) {
    const double mean = Y.mean();
    tss = (Y.array() - mean).square().sum();
  } else {
    tss = Y.squaredNorm();
  }
  fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  const double dn = static_cast<double>(n);
  const double dp = static_cast<double>(p);
  if (fit.df_resid <= 0) {
    fit.adj_r_squared = kNaN;
  } else if (options.intercept) {
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (dn - 1.0) / (dn - dp - 1.0);
  } else {
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * dn / (dn - dp);
  }
  return fit;
}

namespace {

// Liking score per attribute for one (assessor, sample).
using LikingRow = std::unordered_map<std::string_view, double>;

struct RowKey {
  std::size_t assessor;
  std::size_t sample;
  bool operator<(const RowKey& o) const {
    return assessor != o.assessor ? assessor < o.assessor : sample < o.sample;
  }
};

std::map<RowKey, LikingRow> liking_rows(const Dataset& ds) {
  std::unordered_map<std::string_view, std::size_t> assessor_index, sample_index;
  for (std::size_t i = 0; i < ds.assessors().size(); ++i) assessor_index[ds.assessors()[i]] = i;
  for (std::size_t i = 0; i < ds.samples().size(); ++i) sample_index[ds.samples()[i]] = i;
  std::map<RowKey, LikingRow> rows;
  for (const auto& e : ds.evaluations()) {
    rows[{assessor_index.at(e.assessor_id), sample_index.at(e.sample_id)}][e.attribute] =
        e.liking.value();
  }
  for (const auto& r : ds.liking_only()) {
    rows[{assessor_index.at(r.assessor_id), sample_index.at(r.sample_id)}][r.attribute] =
        r.liking.value();
  }
  return rows;
}

void require_attribute(const Dataset& ds, std::string_view name) {
  if (!ds.has_attribute(name) && !ds.has_liking_only_attribute(name)) {
    throw Error(ErrorCode::not_found, fmt::format("unknown attribute '{}'", name));
  }
}

}  // namespace

GroupFits group_regressions(const Dataset& ds, const PanelClassification& verdicts,
                            std::string_view response, std::span<const std::string> predictors) {
  require_attribute(ds, response);
  for (const auto& p : predictors) require_attribute(ds, p);

  struct Design {
    std::vector<double> y;
    std::vector<Predictor> x;
  };
  auto make = [&] {
    Design d;
    for (const auto& p : predictors) d.x.push_back({p, {}});
    return d;
  };
  Design consistent = make(), inconsistent = make(), all = make();
  auto push = [&](Design& d, const LikingRow& row) {
    d.y.push_back(row.at(response));
    for (std::size_t j = 0; j < predictors.size(); ++j) {
      d.x[j].values.push_back(row.at(predictors[j]));
    }
  };

  for (const auto& [key, row] : liking_rows(ds)) {
    if (!row.count(response)) continue;
    if (!std::all_of(predictors.begin(), predictors.end(),
                     [&](const std::string& p) { return row.count(p) > 0; })) {
      continue;
    }
    push(all, row);
    const auto label = verdicts.label_of(ds.assessors()[key.assessor]);
    if (label == ConsistencyLabel::consistent) push(consistent, row);
    if (label == ConsistencyLabel::inconsistent) push(inconsistent, row);
  }

  GroupFits fits;
  fits.consistent = ols(consistent.y, consistent.x);
  fits.inconsistent = ols(inconsistent.y, inconsistent.x);
  fits.all = ols(all.y, all.x);
  return fits;
}

TrendLine fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::validation, "x and y differ in length");
  if (x.size() < 2) {
    throw Error(ErrorCode::insufficient_data, "a trend line needs at least two points");
  }
  const Predictor pred{"x", std::vector<double>(x.begin(), x.end())};
  const auto fit = ols(y, std::span(&pred, 1), {.intercept = true, .allow_saturated = true});
  return {fit.coefficients[0], fit.coefficients[1], fit.r_squared};
}

ScatterSeries scatter_series(std::span<const AssessorSummary> summaries, SummaryField x_field,
                             SummaryField y_field) {
  ScatterSeries out;
  out.x_field = x_field;
  out.y_field = y_field;
  std::vector<double> xs, ys;
  for (const auto& s : summaries) {
    ScatterPoint pt{s.assessor_id, field_value(s, x_field), field_value(s, y_field)};
    xs.push_back(pt.x);
    ys.push_back(pt.y);
    if (!s.label) {
      out.unlabeled.push_back(std::move(pt));
    } else if (*s.label == ConsistencyLabel::consistent) {
      out.consistent.push_back(std::move(pt));
    } else {
      out.inconsistent.push_back(std::move(pt));
    }
  }
  out.line = fit_line(xs, ys);
  return out;
}

std::vector<AttributeTau> attribute_taus(const Dataset& ds, MPolicy policy) {
  std::vector<AttributeTau> out;
  for (const auto& attr : ds.attributes()) {
    const auto pairs = to_pairs(slice_by_attribute(ds, attr));
    if (pairs.size() < 2) continue;
    const auto table = build_contingency(pairs, true);
    if (table_m(table, policy) < 2) continue;
    AttributeTau a;
    a.attribute = attr;
    a.tau = tau_c_with_se(table, policy);
    std::vector<double> likings, jars;
    for (const auto& p : pairs) {
      likings.push_back(p.liking);
      jars.push_back(p.jar);
    }
    a.sd_liking = sample_sd(likings);
    a.sd_jar = sample_sd(jars);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<GroupRatioCell> group_ratio_cells(const Dataset& ds,
                                              const PanelClassification& verdicts,
                                              std::string_view x_attribute,
                                              std::string_view y_attribute) {
  require_attribute(ds, x_attribute);
  require_attribute(ds, y_attribute);
  std::map<std::pair<int, int>, GroupRatioCell> cells;
  for (const auto& [key, row] : liking_rows(ds)) {
    const auto x = row.find(x_attribute);
    const auto y = row.find(y_attribute);
    if (x == row.end() || y == row.end()) continue;
    const int xi = static_cast<int>(x->second);
    const int yi = static_cast<int>(y->second);
    auto& cell = cells[{xi, yi}];
    cell.x = xi;
    cell.y = yi;
    const auto label = verdicts.label_of(ds.assessors()[key.assessor]);
    if (!label) {
      ++cell.unlabeled;
    } else if (*label == ConsistencyLabel::consistent) {
      ++cell.consistent;
    } else {
      ++cell.inconsistent;
    }
  }
  std::vector<GroupRatioCell> out;
  for (auto& [_, c] : cells) out.push_back(c);
  return out;
}

}  // namespace jarcon
