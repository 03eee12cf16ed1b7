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

namespace jarcon {

enum class TestMethod { asymptotic, permutation };
enum class ConsistencyLabel { consistent, inconsistent };

std::string_view to_string(TestMethod method) noexcept;
std::string_view to_string(ConsistencyLabel label) noexcept;
std::string_view to_string(MPolicy policy) noexcept;
/// Throw Error(validation) on unknown names.
TestMethod parse_test_method(std::string_view name);
MPolicy parse_m_policy(std::string_view name);

/// Outcome of the one-sided test H1: tau_c < 0.
struct ConsistencyVerdict {
  TauResult tau;
  double p_value = 1.0;
  TestMethod method = TestMethod::permutation;
  double alpha = 0.05;
  ConsistencyLabel label = ConsistencyLabel::inconsistent;
  std::size_t permutations = 0;  // B; zero for the asymptotic test
};

/// Asymptotic standard error of Stuart's tau-c,
///   sqrt(4 m^2 / ((m-1)^2 n^4) * (sum c_ij d_ij^2 - (sum c_ij d_ij)^2 / n)),
/// with d_ij the concordant minus discordant mass seen from cell (i, j).
/// Throws Error(undefined_se) when fewer than two rows or two columns are
/// occupied, Error(insufficient_data) for n < 2.
double tau_c_standard_error(const ContingencyTable& table,
                            MPolicy policy = MPolicy::fixed_scale);

/// tau_c with `se` filled in whenever the standard error is defined.
TauResult tau_c_with_se(const ContingencyTable& table, MPolicy policy = MPolicy::fixed_scale);

/// z = tau / se, p = Phi(z). A zero SE is treated as the limit of z (p = 0
/// for negative tau, 1 for positive, 0.5 at zero). Throws Error(undefined_se)
/// when `tau.se` is absent.
ConsistencyVerdict test_negative_asymptotic(const TauResult& tau, double alpha = 0.05);

/// p = (1 + #{b : tau_b <= tau_obs}) / (B + 1) over B shuffles of the JAR
/// column against the liking column. Deterministic in `seed`.
ConsistencyVerdict test_negative_permutation(std::span<const ScorePair> pairs, double alpha,
                                             std::size_t permutations, std::uint64_t seed,
                                             MPolicy policy = MPolicy::fixed_scale);

struct ClassifyOptions {
  TestMethod method = TestMethod::permutation;
  double alpha = 0.05;
  std::size_t permutations = 2000;
  std::uint64_t seed = 0;
  MPolicy m_policy = MPolicy::fixed_scale;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Verdict for one assessor's pairs. Permutation streams are seeded with
/// substream_seed(options.seed, assessor_id). Returns nullopt (and sets
/// `reason`) when the assessor cannot be classified.
std::optional<ConsistencyVerdict> classify_assessor(std::span<const ScorePair> pairs,
                                                    std::string_view assessor_id,
                                                    const ClassifyOptions& options,
                                                    std::string* reason = nullptr);

struct AssessorVerdict {
  std::string assessor_id;
  std::size_t pairs = 0;
  std::optional<ConsistencyVerdict> verdict;  // absent when unclassifiable
  std::string reason;                         // why it is unclassifiable
};

struct PanelClassification {
  ClassifyOptions options;
  std::vector<AssessorVerdict> assessors;  // dataset assessor order
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
  std::size_t unclassifiable = 0;
  std::vector<HistogramBin> histogram;  // tau_c of classified assessors, width 0.1

  const AssessorVerdict* find(std::string_view assessor_id) const;
  std::optional<ConsistencyLabel> label_of(std::string_view assessor_id) const;
};

/// One verdict per assessor. Runs assessors in parallel; output is
/// independent of the thread count.
PanelClassification classify_panel(const Dataset& ds, const ClassifyOptions& options);

}  // namespace jarcon
