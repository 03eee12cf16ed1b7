#include "jarcon/inference.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>

#include "jarcon/distributions.hpp"
#include "jarcon/error.hpp"
#include "jarcon/rng.hpp"

namespace jarcon {

std::string_view to_string(TestMethod method) noexcept {
  return method == TestMethod::asymptotic ? "asymptotic" : "permutation";
}

std::string_view to_string(ConsistencyLabel label) noexcept {
  return label == ConsistencyLabel::consistent ? "consistent" : "inconsistent";
}

std::string_view to_string(MPolicy policy) noexcept {
  return policy == MPolicy::fixed_scale ? "fixed" : "observed";
}

TestMethod parse_test_method(std::string_view name) {
  if (name == "asymptotic") return TestMethod::asymptotic;
  if (name == "permutation") return TestMethod::permutation;
  throw Error(ErrorCode::validation, fmt::format("unknown test method '{}'", name));
}

MPolicy parse_m_policy(std::string_view name) {
  if (name == "fixed") return MPolicy::fixed_scale;
  if (name == "observed") return MPolicy::observed_support;
  throw Error(ErrorCode::validation, fmt::format("unknown m-policy '{}'", name));
}

double tau_c_standard_error(const ContingencyTable& t, MPolicy policy) {
  if (!t.folded()) return tau_c_standard_error(t.fold(), policy);
  if (t.total() < 2) {
    throw Error(ErrorCode::insufficient_data,
                fmt::format("standard error needs at least 2 observations, got {}", t.total()));
  }
  if (t.nonempty_rows() < 2 || t.nonempty_cols() < 2) {
    throw Error(ErrorCode::undefined_se,
                "standard error undefined: observations occupy a single row or column");
  }
  const int m = table_m(t, policy);
  const auto mass = cell_pair_mass(t);
  double sum_d = 0.0;
  double sum_d2 = 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    for (int j = 0; j < t.cols(); ++j) {
      const auto at = static_cast<std::size_t>(i * t.cols() + j);
      const double c = static_cast<double>(t.count(i, j));
      const double d = static_cast<double>(mass.concordant[at] - mass.discordant[at]);
      sum_d += c * d;
      sum_d2 += c * d * d;
    }
  }
  const double n = static_cast<double>(t.total());
  const double scale = 4.0 * m * m / ((m - 1.0) * (m - 1.0) * n * n * n * n);
  const double variance = scale * (sum_d2 - sum_d * sum_d / n);
  return std::sqrt(std::max(0.0, variance));
}

TauResult tau_c_with_se(const ContingencyTable& table, MPolicy policy) {
  const ContingencyTable t = table.fold();
  TauResult out = tau_c(t, policy);
  if (t.nonempty_rows() >= 2 && t.nonempty_cols() >= 2) out.se = tau_c_standard_error(t, policy);
  return out;
}

namespace {

ConsistencyLabel label_for(double p, double alpha) {
  return p < alpha ? ConsistencyLabel::consistent : ConsistencyLabel::inconsistent;
}

// n_c - n_d over ordered pairs for a 9 x 3 liking x |JAR| count array.
std::int64_t concordance_score(const std::array<std::int64_t, 27>& counts) {
  std::array<std::int64_t, 3> above{};  // column totals of rows already visited
  std::int64_t s = 0;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto v = counts[static_cast<std::size_t>(r * 3 + c)];
      if (v == 0) continue;
      std::int64_t lower_left = 0;
      std::int64_t lower_right = 0;
      for (int j = 0; j < c; ++j) lower_left += above[static_cast<std::size_t>(j)];
      for (int j = c + 1; j < 3; ++j) lower_right += above[static_cast<std::size_t>(j)];
      s += v * (lower_left - lower_right);
    }
    for (int c = 0; c < 3; ++c) above[static_cast<std::size_t>(c)] += counts[static_cast<std::size_t>(r * 3 + c)];
  }
  return 2 * s;
}

}  // namespace

ConsistencyVerdict test_negative_asymptotic(const TauResult& tau, double alpha) {
  if (!tau.se) {
    throw Error(ErrorCode::undefined_se, "asymptotic test needs a defined standard error");
  }
  ConsistencyVerdict v;
  v.tau = tau;
  v.method = TestMethod::asymptotic;
  v.alpha = alpha;
  if (*tau.se > 0.0) {
    v.p_value = normal_cdf(tau.tau_c / *tau.se);
  } else {
    v.p_value = tau.tau_c < 0.0 ? 0.0 : (tau.tau_c > 0.0 ? 1.0 : 0.5);
  }
  v.label = label_for(v.p_value, alpha);
  return v;
}

ConsistencyVerdict test_negative_permutation(std::span<const ScorePair> pairs, double alpha,
                                             std::size_t permutations, std::uint64_t seed,
                                             MPolicy policy) {
  if (permutations < 100) {
    throw Error(ErrorCode::validation,
                fmt::format("permutation test needs B >= 100, got {}", permutations));
  }
  const auto table = build_contingency(pairs, true);
  ConsistencyVerdict v;
  v.tau = tau_c_with_se(table, policy);
  v.method = TestMethod::permutation;
  v.alpha = alpha;
  v.permutations = permutations;

  std::vector<int> liking_row(pairs.size());
  std::vector<int> magnitude(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    liking_row[i] = pairs[i].liking - LikingScore::kMin;
    magnitude[i] = std::abs(pairs[i].jar);
  }
  // Marginals are fixed under shuffling, so comparing n_c - n_d is
  // equivalent to comparing tau_c and avoids floating ties.
  const std::int64_t observed = v.tau.pairs.concordant - v.tau.pairs.discordant;

  Rng rng(seed);
  std::size_t at_or_below = 0;
  std::array<std::int64_t, 27> counts{};
  for (std::size_t b = 0; b < permutations; ++b) {
    rng.shuffle(std::span<int>(magnitude));
    counts.fill(0);
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
      ++counts[static_cast<std::size_t>(liking_row[i] * 3 + magnitude[i])];
    }
    if (concordance_score(counts) <= observed) ++at_or_below;
  }
  v.p_value = static_cast<double>(1 + at_or_below) / static_cast<double>(permutations + 1);
  v.label = label_for(v.p_value, alpha);
  return v;
}

std::optional<ConsistencyVerdict> classify_assessor(std::span<const ScorePair> pairs,
                                                    std::string_view assessor_id,
                                                    const ClassifyOptions& options,
                                                    std::string* reason) {
  auto fail = [&](std::string why) -> std::optional<ConsistencyVerdict> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  if (pairs.size() < 2) {
    return fail(fmt::format("{} paired evaluation(s); at least 2 required", pairs.size()));
  }
  const auto table = build_contingency(pairs, true);
  if (table_m(table, options.m_policy) < 2) {
    return fail("degenerate table under the observed-support m-policy");
  }
  if (options.method == TestMethod::permutation) {
    return test_negative_permutation(pairs, options.alpha, options.permutations,
                                     substream_seed(options.seed, assessor_id), options.m_policy);
  }
  const auto tau = tau_c_with_se(table, options.m_policy);
  if (!tau.se) {
    // A single occupied row or column forces tau_c = 0: no evidence of consistency.
    ConsistencyVerdict v;
    v.tau = tau;
    v.method = TestMethod::asymptotic;
    v.alpha = options.alpha;
    v.p_value = 0.5;
    v.label = ConsistencyLabel::inconsistent;
    return v;
  }
  return test_negative_asymptotic(tau, options.alpha);
}

const AssessorVerdict* PanelClassification::find(std::string_view assessor_id) const {
  for (const auto& a : assessors) {
    if (a.assessor_id == assessor_id) return &a;
  }
  return nullptr;
}

std::optional<ConsistencyLabel> PanelClassification::label_of(std::string_view assessor_id) const {
  const auto* a = find(assessor_id);
  if (!a || !a->verdict) return std::nullopt;
  return a->verdict->label;
}

PanelClassification classify_panel(const Dataset& ds, const ClassifyOptions& options) {
  PanelClassification out;
  out.options = options;

  std::vector<std::vector<ScorePair>> per_assessor(ds.assessors().size());
  {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < ds.assessors().size(); ++i) index[ds.assessors()[i]] = i;
    for (const auto& e : ds.evaluations()) {
      per_assessor[index.at(e.assessor_id)].push_back({e.liking.value(), e.jar.value()});
    }
  }

  out.assessors.resize(per_assessor.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < per_assessor.size(); i = next++) {
      auto& slot = out.assessors[i];
      slot.assessor_id = ds.assessors()[i];
      slot.pairs = per_assessor[i].size();
      slot.verdict = classify_assessor(per_assessor[i], slot.assessor_id, options, &slot.reason);
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(1, per_assessor.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  std::vector<double> taus;
  for (const auto& a : out.assessors) {
    if (!a.verdict) {
      ++out.unclassifiable;
      continue;
    }
    taus.push_back(a.verdict->tau.tau_c);
    if (a.verdict->label == ConsistencyLabel::consistent) {
      ++out.consistent;
    } else {
      ++out.inconsistent;
    }
  }
  out.histogram = tau_histogram(taus, 0.1);
  return out;
}

}  // namespace jarcon
