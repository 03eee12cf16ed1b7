#include "jarcon/core_model.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include <fmt/format.h>

#include "jarcon/error.hpp"

namespace jarcon {

LikingScore::LikingScore(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    throw Error(ErrorCode::validation,
                fmt::format("liking score {} out of range [{}, {}]", value, kMin, kMax));
  }
}

JarScore::JarScore(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    throw Error(ErrorCode::validation,
                fmt::format("JAR score {} out of range [{}, {}]", value, kMin, kMax));
  }
}

namespace {

bool contains(const std::vector<std::string>& list, std::string_view item) {
  return std::find(list.begin(), list.end(), item) != list.end();
}

void append_unique(std::vector<std::string>& list, std::unordered_set<std::string>& seen,
                   const std::string& item) {
  if (seen.insert(item).second) list.push_back(item);
}

void check_unique_list(const std::vector<std::string>& list, std::string_view what) {
  std::unordered_set<std::string> seen;
  for (const auto& item : list) {
    if (!seen.insert(item).second) {
      throw Error(ErrorCode::validation, fmt::format("duplicate {} '{}' in header", what, item));
    }
  }
}

}  // namespace

Dataset::Dataset(DatasetHeader header, std::vector<Evaluation> evaluations,
                 std::vector<LikingOnlyRecord> liking_only)
    : header_(std::move(header)),
      evaluations_(std::move(evaluations)),
      liking_only_(std::move(liking_only)) {
  validate();
}

Dataset Dataset::from_records(std::vector<Evaluation> evaluations,
                              std::vector<LikingOnlyRecord> liking_only) {
  DatasetHeader header;
  std::unordered_set<std::string> assessors, samples, attributes, liking_attrs;
  for (const auto& e : evaluations) {
    append_unique(header.assessors, assessors, e.assessor_id);
    append_unique(header.samples, samples, e.sample_id);
    append_unique(header.attributes, attributes, e.attribute);
  }
  for (const auto& r : liking_only) {
    append_unique(header.assessors, assessors, r.assessor_id);
    append_unique(header.samples, samples, r.sample_id);
    append_unique(header.liking_only_attributes, liking_attrs, r.attribute);
  }
  return Dataset(std::move(header), std::move(evaluations), std::move(liking_only));
}

void Dataset::validate() const {
  check_unique_list(header_.assessors, "assessor");
  check_unique_list(header_.samples, "sample");
  check_unique_list(header_.attributes, "attribute");
  check_unique_list(header_.liking_only_attributes, "liking-only attribute");
  for (const auto& a : header_.liking_only_attributes) {
    if (contains(header_.attributes, a)) {
      throw Error(ErrorCode::validation,
                  fmt::format("attribute '{}' declared both paired and liking-only", a));
    }
  }

  const std::unordered_set<std::string> assessors(header_.assessors.begin(),
                                                  header_.assessors.end());
  const std::unordered_set<std::string> samples(header_.samples.begin(), header_.samples.end());
  const std::unordered_set<std::string> attributes(header_.attributes.begin(),
                                                   header_.attributes.end());
  const std::unordered_set<std::string> liking_attrs(header_.liking_only_attributes.begin(),
                                                     header_.liking_only_attributes.end());

  std::set<std::tuple<std::string_view, std::string_view, std::string_view>> keys;
  auto check = [&](std::size_t index, const std::string& assessor, const std::string& sample,
                   const std::string& attribute, const std::unordered_set<std::string>& attrs) {
    if (!assessors.count(assessor)) {
      throw Error(ErrorCode::validation,
                  fmt::format("record {}: undeclared assessor '{}'", index, assessor));
    }
    if (!samples.count(sample)) {
      throw Error(ErrorCode::validation,
                  fmt::format("record {}: undeclared sample '{}'", index, sample));
    }
    if (!attrs.count(attribute)) {
      throw Error(ErrorCode::validation,
                  fmt::format("record {}: undeclared attribute '{}'", index, attribute));
    }
    if (!keys.emplace(assessor, sample, attribute).second) {
      throw Error(ErrorCode::validation,
                  fmt::format("record {}: duplicate (assessor, sample, attribute) = ({}, {}, {})",
                              index, assessor, sample, attribute));
    }
  };
  std::size_t index = 0;
  for (const auto& e : evaluations_) check(index++, e.assessor_id, e.sample_id, e.attribute, attributes);
  for (const auto& r : liking_only_) check(index++, r.assessor_id, r.sample_id, r.attribute, liking_attrs);
}

bool Dataset::has_assessor(std::string_view id) const { return contains(header_.assessors, id); }

bool Dataset::has_attribute(std::string_view name) const {
  return contains(header_.attributes, name);
}

bool Dataset::has_liking_only_attribute(std::string_view name) const {
  return contains(header_.liking_only_attributes, name);
}

std::vector<Evaluation> slice_by_assessor(const Dataset& ds, std::string_view assessor_id) {
  if (!ds.has_assessor(assessor_id)) {
    throw Error(ErrorCode::not_found, fmt::format("unknown assessor '{}'", assessor_id));
  }
  std::vector<Evaluation> out;
  std::copy_if(ds.evaluations().begin(), ds.evaluations().end(), std::back_inserter(out),
               [&](const Evaluation& e) { return e.assessor_id == assessor_id; });
  return out;
}

std::vector<Evaluation> slice_by_attribute(const Dataset& ds, std::string_view attribute) {
  if (!ds.has_attribute(attribute)) {
    throw Error(ErrorCode::not_found, fmt::format("unknown attribute '{}'", attribute));
  }
  std::vector<Evaluation> out;
  std::copy_if(ds.evaluations().begin(), ds.evaluations().end(), std::back_inserter(out),
               [&](const Evaluation& e) { return e.attribute == attribute; });
  return out;
}

std::vector<LikingOnlyRecord> liking_only_by_assessor(const Dataset& ds,
                                                      std::string_view assessor_id) {
  if (!ds.has_assessor(assessor_id)) {
    throw Error(ErrorCode::not_found, fmt::format("unknown assessor '{}'", assessor_id));
  }
  std::vector<LikingOnlyRecord> out;
  std::copy_if(ds.liking_only().begin(), ds.liking_only().end(), std::back_inserter(out),
               [&](const LikingOnlyRecord& r) { return r.assessor_id == assessor_id; });
  return out;
}

}  // namespace jarcon
