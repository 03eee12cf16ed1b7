#include "doctest.h"

#include "jarcon/core_model.hpp"
#include "jarcon/error.hpp"

using namespace jarcon;

namespace {

Evaluation ev(std::string a, std::string s, std::string attr, int liking, int jar) {
  return {std::move(a), std::move(s), std::move(attr), LikingScore(liking), JarScore(jar)};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("scores accept exactly their scale") {
  for (int v = 1; v <= 9; ++v) CHECK(LikingScore(v).value() == v);
  for (int v = -2; v <= 2; ++v) CHECK(JarScore(v).value() == v);
  CHECK(code_of([] { LikingScore(0); }) == ErrorCode::validation);
  CHECK(code_of([] { LikingScore(10); }) == ErrorCode::validation);
  CHECK(code_of([] { JarScore(-3); }) == ErrorCode::validation);
  CHECK(code_of([] { JarScore(3); }) == ErrorCode::validation);
  CHECK(JarScore(-2).magnitude() == 2);
  CHECK(JarScore(1).magnitude() == 1);
  CHECK(JarScore(0).magnitude() == 0);
}

TEST_CASE("from_records derives first-appearance order") {
  const auto ds = Dataset::from_records(
      {ev("B", "s2", "taste", 5, 0), ev("A", "s1", "odour", 6, 1), ev("B", "s1", "taste", 7, -1)},
      {{"A", "s1", "overall", LikingScore(4)}});
  CHECK(ds.assessors() == std::vector<std::string>{"B", "A"});
  CHECK(ds.samples() == std::vector<std::string>{"s2", "s1"});
  CHECK(ds.attributes() == std::vector<std::string>{"taste", "odour"});
  CHECK(ds.liking_only_attributes() == std::vector<std::string>{"overall"});
  CHECK(ds.has_assessor("A"));
  CHECK_FALSE(ds.has_assessor("C"));
  CHECK(ds.has_attribute("taste"));
  CHECK_FALSE(ds.has_attribute("overall"));
  CHECK(ds.has_liking_only_attribute("overall"));
  CHECK_FALSE(ds.empty());
}

TEST_CASE("dataset validation") {
  SUBCASE("duplicate triple") {
    CHECK(code_of([] {
            Dataset::from_records({ev("A", "s", "t", 5, 0), ev("A", "s", "t", 6, 1)});
          }) == ErrorCode::validation);
  }
  SUBCASE("attribute both paired and liking-only") {
    CHECK(code_of([] {
            Dataset::from_records({ev("A", "s", "t", 5, 0)}, {{"A", "s2", "t", LikingScore(3)}});
          }) == ErrorCode::validation);
  }
  SUBCASE("record outside the header") {
    DatasetHeader h{{"A"}, {"s"}, {"t"}, {}};
    CHECK(code_of([&] { Dataset(h, {ev("B", "s", "t", 5, 0)}); }) == ErrorCode::validation);
    CHECK(code_of([&] { Dataset(h, {ev("A", "x", "t", 5, 0)}); }) == ErrorCode::validation);
    CHECK_NOTHROW(Dataset(h, {ev("A", "s", "t", 5, 0)}));
  }
  SUBCASE("duplicate header entry") {
    DatasetHeader h{{"A", "A"}, {"s"}, {"t"}, {}};
    CHECK(code_of([&] { Dataset(h, {}); }) == ErrorCode::validation);
  }
}

TEST_CASE("slices") {
  const auto ds = Dataset::from_records({ev("A", "s1", "t", 5, 0), ev("B", "s1", "t", 6, 1),
                                         ev("A", "s2", "t", 7, -1), ev("A", "s2", "u", 2, 2)},
                                        {{"A", "s1", "overall", LikingScore(8)}});
  CHECK(slice_by_assessor(ds, "A").size() == 3);
  CHECK(slice_by_assessor(ds, "B").size() == 1);
  CHECK(slice_by_attribute(ds, "t").size() == 3);
  CHECK(slice_by_attribute(ds, "u").front().liking == LikingScore(2));
  CHECK(liking_only_by_assessor(ds, "A").size() == 1);
  CHECK(liking_only_by_assessor(ds, "B").empty());
  CHECK(code_of([&] { slice_by_assessor(ds, "Z"); }) == ErrorCode::not_found);
  CHECK(code_of([&] { slice_by_attribute(ds, "nope"); }) == ErrorCode::not_found);
}

TEST_CASE("equality is field-level") {
  const auto a = Dataset::from_records({ev("A", "s", "t", 5, 0)});
  const auto b = Dataset::from_records({ev("A", "s", "t", 5, 0)});
  const auto c = Dataset::from_records({ev("A", "s", "t", 5, 1)});
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(Dataset().empty());
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::validation) == "validation_error");
  CHECK(to_string(ErrorCode::not_found) == "not_found");
  CHECK(to_string(ErrorCode::conflict) == "conflict");
  CHECK(to_string(ErrorCode::io) == "io_error");
}
