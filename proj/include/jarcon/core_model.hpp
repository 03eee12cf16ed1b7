#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace jarcon {

/// Nine-point hedonic score, 1 = extremely dislike ... 9 = extremely like.
class LikingScore {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 9;
  static constexpr int kLevels = kMax - kMin + 1;

  /// Throws Error(validation) outside [1, 9].
  explicit LikingScore(int value);

  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(LikingScore, LikingScore) = default;

 private:
  int value_;
};

/// Five-point just-about-right score, -2 = not enough at all ... +2 = far too much.
class JarScore {
 public:
  static constexpr int kMin = -2;
  static constexpr int kMax = 2;
  static constexpr int kLevels = kMax - kMin + 1;
  static constexpr int kMagnitudeLevels = kMax + 1;

  /// Throws Error(validation) outside [-2, 2].
  explicit JarScore(int value);

  constexpr int value() const noexcept { return value_; }
  /// Distance from the ideal intensity, in {0, 1, 2}.
  constexpr int magnitude() const noexcept { return value_ < 0 ? -value_ : value_; }

  friend constexpr auto operator<=>(JarScore, JarScore) = default;

 private:
  int value_;
};

/// One paired observation: the same (sample, attribute) scored on both scales.
struct Evaluation {
  std::string assessor_id;
  std::string sample_id;
  std::string attribute;
  LikingScore liking;
  JarScore jar;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// A liking score without a JAR counterpart (e.g. overall acceptance). Kept
/// apart from Evaluation so association statistics only ever see full pairs.
struct LikingOnlyRecord {
  std::string assessor_id;
  std::string sample_id;
  std::string attribute;
  LikingScore liking;

  friend bool operator==(const LikingOnlyRecord&, const LikingOnlyRecord&) = default;
};

/// Declared identifiers of a dataset, in iteration order.
struct DatasetHeader {
  std::vector<std::string> assessors;
  std::vector<std::string> samples;
  std::vector<std::string> attributes;              // paired attributes
  std::vector<std::string> liking_only_attributes;  // liking-only attributes

  friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

/// Immutable, validated collection of evaluations.
///
/// Invariants: every record references a declared assessor, sample and
/// attribute; (assessor, sample, attribute) is unique across both record
/// kinds; an attribute is either paired or liking-only, never both.
class Dataset {
 public:
  Dataset() = default;

  /// Explicit header; records are validated against it.
  Dataset(DatasetHeader header, std::vector<Evaluation> evaluations,
          std::vector<LikingOnlyRecord> liking_only = {});

  /// Header derived from records in order of first appearance (paired
  /// records first, then liking-only records).
  static Dataset from_records(std::vector<Evaluation> evaluations,
                              std::vector<LikingOnlyRecord> liking_only = {});

  const DatasetHeader& header() const noexcept { return header_; }
  const std::vector<std::string>& assessors() const noexcept { return header_.assessors; }
  const std::vector<std::string>& samples() const noexcept { return header_.samples; }
  const std::vector<std::string>& attributes() const noexcept { return header_.attributes; }
  const std::vector<std::string>& liking_only_attributes() const noexcept {
    return header_.liking_only_attributes;
  }
  const std::vector<Evaluation>& evaluations() const noexcept { return evaluations_; }
  const std::vector<LikingOnlyRecord>& liking_only() const noexcept { return liking_only_; }

  bool has_assessor(std::string_view id) const;
  bool has_attribute(std::string_view name) const;
  bool has_liking_only_attribute(std::string_view name) const;
  bool empty() const noexcept { return evaluations_.empty() && liking_only_.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void validate() const;

  DatasetHeader header_;
  std::vector<Evaluation> evaluations_;
  std::vector<LikingOnlyRecord> liking_only_;
};

/// Paired evaluations of one assessor, order-stable. Throws Error(not_found).
std::vector<Evaluation> slice_by_assessor(const Dataset& ds, std::string_view assessor_id);

/// Paired evaluations of one attribute, order-stable. Throws Error(not_found).
std::vector<Evaluation> slice_by_attribute(const Dataset& ds, std::string_view attribute);

/// Liking-only records of one assessor, order-stable. Throws Error(not_found).
std::vector<LikingOnlyRecord> liking_only_by_assessor(const Dataset& ds,
                                                      std::string_view assessor_id);

}  // namespace jarcon
