#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "jarcon/distributions.hpp"
#include "jarcon/error.hpp"
#include "jarcon/inference.hpp"
#include "jarcon/rng.hpp"
#include "oracles.hpp"
#include "published_tables.hpp"

using namespace jarcon;

namespace {

ContingencyTable folded_example(const published::Table& t) {
  return ContingencyTable::from_counts(published::as_rows(t), false).fold();
}

// Pairs drawn from the cell frequencies of `t`.
std::vector<ScorePair> resample(const std::vector<ScorePair>& base, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
  std::vector<ScorePair> out(base.size());
  for (auto& p : out) p = base[pick(gen)];
  return out;
}

}  // namespace

TEST_CASE("normal and t distributions") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
  CHECK(student_t_two_sided_p(2.0, 10.0) == doctest::Approx(0.07338803477074).epsilon(1e-9));
  CHECK(student_t_two_sided_p(INFINITY, 5.0) == 0.0);
  CHECK(student_t_quantile_upper(0.025, 99.0) == doctest::Approx(1.984216952).epsilon(1e-8));
}

TEST_CASE("asymptotic standard error against a jackknife") {
  for (const auto* t : {&published::kConsistentExample, &published::kInconsistentExample}) {
    const auto table = folded_example(*t);
    const auto se = tau_c_standard_error(table);
    const auto jack = oracle::jackknife_se(table.expand());
    CHECK(std::fabs(se - jack) / jack < 0.15);
  }
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 20; ++rep) {
    auto pairs = oracle::random_pairs(gen, 90);
    const auto se = tau_c_standard_error(build_contingency(pairs, true));
    const auto jack = oracle::jackknife_se(pairs);
    CHECK(std::fabs(se - jack) / jack < 0.15);
  }
}

TEST_CASE("asymptotic standard error against Monte-Carlo spread") {
  const auto base = folded_example(published::kConsistentExample).expand();
  const double se = tau_c_standard_error(folded_example(published::kConsistentExample));
  std::mt19937_64 gen(22);
  std::vector<double> taus;
  for (int rep = 0; rep < 2000; ++rep) taus.push_back(tau_c(resample(base, gen)).tau_c);
  const auto spread = oracle::mean_sd(taus).sd;
  CHECK(std::fabs(se - spread) / spread < 0.10);
}

TEST_CASE("standard error undefined on a single row or column") {
  const std::vector<ScorePair> zero = {{1, 0}, {5, 0}, {9, 0}};
  CHECK_THROWS_AS(tau_c_standard_error(build_contingency(zero, true)), Error);
  CHECK_FALSE(tau_c_with_se(build_contingency(zero, true)).se.has_value());
  const auto with = tau_c_with_se(folded_example(published::kConsistentExample));
  REQUIRE(with.se.has_value());
  CHECK(*with.se > 0.0);
}

TEST_CASE("asymptotic test") {
  auto tau = tau_c_with_se(folded_example(published::kConsistentExample));
  auto v = test_negative_asymptotic(tau);
  CHECK(v.p_value == doctest::Approx(normal_cdf(tau.tau_c / *tau.se)));
  CHECK(v.label == ConsistencyLabel::consistent);
  CHECK(v.method == TestMethod::asymptotic);

  auto tb = tau_c_with_se(folded_example(published::kInconsistentExample));
  CHECK(test_negative_asymptotic(tb).label == ConsistencyLabel::inconsistent);

  TauResult zero_se;
  zero_se.se = 0.0;
  zero_se.tau_c = -0.5;
  CHECK(test_negative_asymptotic(zero_se).p_value == 0.0);
  zero_se.tau_c = 0.0;
  CHECK(test_negative_asymptotic(zero_se).p_value == 0.5);
  TauResult no_se;
  CHECK_THROWS_AS(test_negative_asymptotic(no_se), Error);
}

TEST_CASE("permutation test") {
  const auto pairs = folded_example(published::kConsistentExample).expand();
  const auto v = test_negative_permutation(pairs, 0.05, 999, 42);
  CHECK(v.p_value == doctest::Approx(1.0 / 1000.0));
  CHECK(v.label == ConsistencyLabel::consistent);
  CHECK(v.permutations == 999);
  CHECK(v.tau.tau_c == tau_c(pairs).tau_c);

  SUBCASE("deterministic in the seed") {
    const auto b = folded_example(published::kInconsistentExample).expand();
    const auto p1 = test_negative_permutation(b, 0.05, 500, 7).p_value;
    const auto p2 = test_negative_permutation(b, 0.05, 500, 7).p_value;
    CHECK(p1 == p2);
    CHECK(p1 > 0.5);
  }
  SUBCASE("p-value lies on the (1 + k) / (B + 1) grid") {
    std::mt19937_64 gen(5);
    const auto r = oracle::random_pairs(gen, 30);
    const auto p = test_negative_permutation(r, 0.05, 200, 1).p_value;
    const double k = p * 201 - 1;
    CHECK(k == doctest::Approx(std::round(k)));
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
  }
  SUBCASE("B below 100 is rejected") {
    CHECK_THROWS_AS(test_negative_permutation(pairs, 0.05, 99, 1), Error);
  }
  SUBCASE("all JAR zero can never be consistent") {
    std::vector<ScorePair> zero;
    for (int l = 1; l <= 9; ++l) zero.push_back({l, 0});
    const auto z = test_negative_permutation(zero, 0.05, 200, 3);
    CHECK(z.tau.tau_c == 0.0);
    CHECK(z.p_value == 1.0);
    CHECK(z.label == ConsistencyLabel::inconsistent);
  }
}

TEST_CASE("permutation and asymptotic p-values agree on null data") {
  std::mt19937_64 gen(31);
  int close = 0;
  const int reps = 60;
  for (int rep = 0; rep < reps; ++rep) {
    const auto pairs = oracle::random_pairs(gen, 90);
    const auto perm = test_negative_permutation(pairs, 0.05, 2000, rep).p_value;
    const auto asym = test_negative_asymptotic(tau_c_with_se(build_contingency(pairs, true))).p_value;
    close += std::fabs(perm - asym) <= 0.05;
  }
  CHECK(close >= reps * 9 / 10);
}

TEST_CASE("classify_assessor edge cases") {
  ClassifyOptions opt;
  std::string reason;
  CHECK_FALSE(classify_assessor(std::vector<ScorePair>{{5, 0}}, "A", opt, &reason));
  CHECK(reason.find("at least 2") != std::string::npos);

  opt.m_policy = MPolicy::observed_support;
  const std::vector<ScorePair> flat = {{1, 0}, {5, 0}, {9, 0}};
  CHECK_FALSE(classify_assessor(flat, "A", opt, &reason));

  opt.m_policy = MPolicy::fixed_scale;
  opt.method = TestMethod::asymptotic;
  const auto v = classify_assessor(flat, "A", opt);
  REQUIRE(v);
  CHECK(v->p_value == 0.5);
  CHECK(v->label == ConsistencyLabel::inconsistent);
}

TEST_CASE("classify_panel is independent of thread count") {
  std::vector<Evaluation> evals;
  std::mt19937_64 gen(41);
  for (int a = 0; a < 12; ++a) {
    const auto pairs = a % 2 ? oracle::random_pairs(gen, 30)
                             : folded_example(published::kConsistentExample).expand();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      evals.push_back({"A" + std::to_string(a), "s" + std::to_string(i), "t",
                       LikingScore(pairs[i].liking), JarScore(pairs[i].jar)});
    }
  }
  evals.push_back({"lonely", "s0", "t", LikingScore(5), JarScore(0)});
  const auto ds = Dataset::from_records(evals);
  ClassifyOptions opt;
  opt.permutations = 300;
  opt.threads = 1;
  const auto one = classify_panel(ds, opt);
  opt.threads = 4;
  const auto four = classify_panel(ds, opt);
  REQUIRE(one.assessors.size() == 13);
  for (std::size_t i = 0; i < one.assessors.size(); ++i) {
    CHECK(one.assessors[i].assessor_id == ds.assessors()[i]);
    CHECK(one.assessors[i].verdict.has_value() == four.assessors[i].verdict.has_value());
    if (one.assessors[i].verdict) {
      CHECK(one.assessors[i].verdict->p_value == four.assessors[i].verdict->p_value);
    }
  }
  CHECK(one.consistent + one.inconsistent + one.unclassifiable == 13);
  CHECK(one.unclassifiable == 1);
  CHECK(one.label_of("A0") == ConsistencyLabel::consistent);
  CHECK_FALSE(one.label_of("lonely"));
  CHECK(one.find("nobody") == nullptr);
  std::size_t in_hist = 0;
  for (const auto& b : one.histogram) in_hist += b.count;
  CHECK(in_hist == 12);
}

TEST_CASE("rng substreams") {
  Rng a(substream_seed(1, std::string_view("A001")));
  Rng b(substream_seed(1, std::string_view("A001")));
  Rng c(substream_seed(1, std::string_view("A002")));
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform_int(-2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("parsers") {
  CHECK(parse_test_method("asymptotic") == TestMethod::asymptotic);
  CHECK(parse_m_policy("observed") == MPolicy::observed_support);
  CHECK(to_string(MPolicy::fixed_scale) == "fixed");
  CHECK_THROWS_AS(parse_test_method("bootstrap"), Error);
  CHECK_THROWS_AS(parse_m_policy("auto"), Error);
}
