#include "doctest.h"

#include <cmath>
#include <random>

#include "jarcon/error.hpp"
#include "jarcon/modeling.hpp"
#include "jarcon/synth.hpp"
#include "oracles.hpp"

using namespace jarcon;

namespace {

std::vector<double> uniform_column(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

AssessorSummary summary(std::string id, std::optional<ConsistencyLabel> label, double sd_liking,
                        double tau) {
  AssessorSummary s;
  s.assessor_id = std::move(id);
  s.label = label;
  s.sd_liking = sd_liking;
  s.tau.tau_c = tau;
  return s;
}

}  // namespace

TEST_CASE("noiseless designs are recovered exactly") {
  std::mt19937_64 gen(1);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 30 + rep;
    std::vector<Predictor> x;
    const std::vector<double> beta = {1.5, -2.0, 0.25, 3.0};
    for (int j = 0; j < 3; ++j) x.push_back({"x" + std::to_string(j), uniform_column(gen, n, 1, 9)});
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = beta[0];
      for (int j = 0; j < 3; ++j) y[i] += beta[j + 1] * x[j].values[i];
    }
    const auto fit = ols(y, x);
    REQUIRE(fit.coefficients.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::fabs(fit.coefficients[j] - beta[j]) < 1e-9);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.names.front() == "(Intercept)");
    CHECK(fit.coefficient("x0").value() == doctest::Approx(-2.0));
    CHECK_FALSE(fit.coefficient("nope"));
  }
}

TEST_CASE("adjusted R-squared identity and residual orthogonality") {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> noise(0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 40;
    std::vector<Predictor> x = {{"a", uniform_column(gen, n, 0, 5)}, {"b", uniform_column(gen, n, 0, 5)}};
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 1 + x[0].values[i] - 0.5 * x[1].values[i] + noise(gen);
    const auto fit = ols(y, x);
    const double p = 2;
    const double expected = 1 - (1 - fit.r_squared) * (n - 1) / (n - p - 1);
    CHECK(std::fabs(fit.adj_r_squared - expected) < 1e-12);
    CHECK(fit.df_resid == 37);

    // Residuals are orthogonal to every column of the design.
    double dot_one = 0, dot_a = 0, dot_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fitted = fit.coefficients[0] + fit.coefficients[1] * x[0].values[i] +
                            fit.coefficients[2] * x[1].values[i];
      const double r = y[i] - fitted;
      dot_one += r;
      dot_a += r * x[0].values[i];
      dot_b += r * x[1].values[i];
    }
    CHECK(std::fabs(dot_one) < 1e-9);
    CHECK(std::fabs(dot_a) < 1e-9);
    CHECK(std::fabs(dot_b) < 1e-9);

    // Adding a column never lowers R-squared.
    auto more = x;
    more.push_back({"c", uniform_column(gen, n, 0, 5)});
    CHECK(ols(y, more).r_squared >= fit.r_squared - 1e-12);
  }
}

TEST_CASE("simple regression matches the closed form") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0, 0.5);
  const auto x = uniform_column(gen, 50, -3, 3);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.3 - 0.8 * x[i] + noise(gen);
  const auto line = fit_line(x, y);
  const auto o = oracle::simple_regression(x, y);
  CHECK(line.intercept == doctest::Approx(o.intercept).epsilon(1e-10));
  CHECK(line.slope == doctest::Approx(o.slope).epsilon(1e-10));
  CHECK(line.r_squared == doctest::Approx(o.r_squared).epsilon(1e-10));

  const Predictor pred{"x", x};
  const auto fit = ols(y, std::span(&pred, 1));
  // Standard error of the slope from sigma^2 / Sxx.
  double mx = 0;
  for (double v : x) mx += v;
  mx /= static_cast<double>(x.size());
  double sxx = 0, rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    const double r = y[i] - o.intercept - o.slope * x[i];
    rss += r * r;
  }
  const double se = std::sqrt(rss / (static_cast<double>(x.size()) - 2) / sxx);
  CHECK(fit.standard_errors[1] == doctest::Approx(se).epsilon(1e-9));
  CHECK(fit.t_values[1] == doctest::Approx(o.slope / se).epsilon(1e-9));
}

TEST_CASE("collinearity names the offending column") {
  const std::vector<double> a = {1, 2, 3, 4, 5, 6};
  std::vector<double> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = 2 * a[i] + 1;
  const std::vector<double> y = {1, 3, 2, 5, 4, 6};
  const std::vector<Predictor> x = {{"a", a}, {"b", b}};
  try {
    ols(y, x);
    FAIL("expected collinearity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::collinearity);
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }
  const std::vector<Predictor> constant = {{"k", std::vector<double>(6, 3.0)}};
  CHECK_THROWS_AS(ols(y, constant), Error);
  const std::vector<double> short_y = {1, 2};
  CHECK_THROWS_AS(ols(short_y, x), Error);
}

TEST_CASE("Welch test") {
  const std::vector<double> a = {5.1, 4.9, 5.6, 5.8, 6.0, 5.2, 5.4};
  const std::vector<double> b = {4.1, 4.5, 4.0, 4.8, 3.9};
  const auto ab = welch_t_test(a, b);
  const auto ba = welch_t_test(b, a);
  CHECK(ab.statistic == doctest::Approx(-ba.statistic));
  CHECK(ab.p_value == doctest::Approx(ba.p_value));
  CHECK(ab.df == doctest::Approx(ba.df));
  CHECK(ab.significant);
  // Reference values from the textbook formulas.
  const auto sa = oracle::mean_sd(a);
  const auto sb = oracle::mean_sd(b);
  const double qa = sa.sd * sa.sd / 7, qb = sb.sd * sb.sd / 5;
  CHECK(ab.statistic == doctest::Approx((sa.mean - sb.mean) / std::sqrt(qa + qb)));
  CHECK(ab.df == doctest::Approx((qa + qb) * (qa + qb) / (qa * qa / 6 + qb * qb / 4)));
  const std::vector<double> tiny = {1};
  CHECK_THROWS_AS(welch_t_test(tiny, b), Error);
}

TEST_CASE("group comparisons and scatter series") {
  std::vector<AssessorSummary> s;
  for (int i = 0; i < 6; ++i) {
    s.push_back(summary("c" + std::to_string(i), ConsistencyLabel::consistent, 3.0 + 0.1 * i, -0.8 + 0.02 * i));
    s.push_back(summary("i" + std::to_string(i), ConsistencyLabel::inconsistent, 2.0 + 0.1 * i, 0.1 * i));
  }
  s.push_back(summary("u", std::nullopt, 2.5, 0.0));
  const auto g = compare_groups(s, SummaryField::sd_liking);
  CHECK(g.n_consistent == 6);
  CHECK(g.n_inconsistent == 6);
  CHECK(g.mean_consistent == doctest::Approx(3.25));
  CHECK(g.test.significant);
  CHECK(g.test.statistic > 0);

  const auto series = scatter_series(s, SummaryField::sd_liking);
  CHECK(series.consistent.size() == 6);
  CHECK(series.inconsistent.size() == 6);
  CHECK(series.unlabeled.size() == 1);
  std::vector<double> xs, ys;
  for (const auto& a : s) {
    xs.push_back(a.sd_liking);
    ys.push_back(a.tau.tau_c);
  }
  const auto o = oracle::simple_regression(xs, ys);
  CHECK(series.line.slope == doctest::Approx(o.slope).epsilon(1e-10));
  CHECK(parse_summary_field("tie_free_pairs") == SummaryField::tie_free_pairs);
  CHECK_THROWS_AS(parse_summary_field("bogus"), Error);
}

TEST_CASE("panel-level summaries, regressions and ratio cells") {
  PanelSpec spec;
  spec.archetypes = {{Archetype::ideal_point, 0.75, 12}, {Archetype::random_responder, 0.75, 8}};
  spec.seed = 5;
  const auto ds = generate(spec);
  ClassifyOptions opt;
  opt.permutations = 200;
  const auto verdicts = classify_panel(ds, opt);
  const auto summaries = summarize_assessors(ds, verdicts);
  REQUIRE(summaries.size() == 20);
  for (const auto& sm : summaries) {
    const auto own = slice_by_assessor(ds, sm.assessor_id);
    std::vector<double> jars;
    for (const auto& e : own) jars.push_back(e.jar.value());
    CHECK(sm.mean_jar == doctest::Approx(oracle::mean_sd(jars).mean));
    CHECK(sm.sd_jar == doctest::Approx(oracle::mean_sd(jars).sd));
    const auto pairs = to_pairs(own);
    CHECK(sm.tau.tau_c == doctest::Approx(oracle::tau_c(pairs)));
    CHECK(sm.label == verdicts.label_of(sm.assessor_id));
  }

  const auto fits = group_regressions(ds, verdicts, "global_liking", ds.attributes());
  CHECK(fits.all.n == 200);
  CHECK(fits.consistent.n + fits.inconsistent.n == 200);
  CHECK(fits.all.names.size() == ds.attributes().size() + 1);
  const std::vector<std::string> taste = {"global_taste"};
  const auto single = group_regressions(ds, verdicts, "global_liking", taste);
  CHECK(single.all.names == std::vector<std::string>{"(Intercept)", "global_taste"});
  const std::vector<std::string> bogus = {"nope"};
  CHECK_THROWS_AS(group_regressions(ds, verdicts, "global_liking", bogus), Error);

  const auto cells = group_ratio_cells(ds, verdicts, "global_taste", "global_liking");
  std::size_t total = 0;
  for (const auto& c : cells) total += c.consistent + c.inconsistent + c.unlabeled;
  CHECK(total == 200);

  const auto taus = attribute_taus(ds);
  CHECK(taus.size() == ds.attributes().size());
  for (const auto& a : taus) {
    CHECK(a.tau.tau_c == doctest::Approx(oracle::tau_c(to_pairs(slice_by_attribute(ds, a.attribute)))));
  }
}
