#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "jarcon/csv_io.hpp"
#include "jarcon/error.hpp"
#include "jarcon/report.hpp"
#include "jarcon/synth.hpp"
#include "published_tables.hpp"

using namespace jarcon;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    ingest_csv(in, "panel.csv");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::validation);
    return e.what();
  }
  FAIL("expected a validation error");
  return {};
}

// 9000 long rows whose contingency equals the published full-panel table:
// 100 assessors x 10 samples x 9 attributes.
std::string full_panel_csv() {
  const auto pairs = ContingencyTable::from_counts(published::as_rows(published::kFullPanel), false).expand();
  std::string out = "assessor,sample,attribute,liking,jar\n";
  std::size_t i = 0;
  for (int a = 0; a < 100; ++a) {
    for (int s = 0; s < 10; ++s) {
      for (int t = 0; t < 9; ++t) {
        const auto& p = pairs[i++];
        out += fmt::format("P{:03d},{},{},{},{}\n", a, synthetic_sample_name(static_cast<std::size_t>(s)),
                           synthetic_attribute_name(static_cast<std::size_t>(t)), p.liking, p.jar);
      }
    }
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("jarcon_test_" + name);
  fs::remove_all(dir);
  return dir;
}

AnalysisConfig quick_config() {
  AnalysisConfig c;
  c.classify.permutations = 200;
  c.classify.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("line-numbered validation errors") {
  const std::string head = "assessor,sample,attribute,liking,jar\n";
  CHECK(error_of(head + "A,s,t,5,0\nA,s,u,10,0\n").find("line 3: field 'liking'") != std::string::npos);
  CHECK(error_of(head + "A,s,t,5,3\n").find("line 2: field 'jar'") != std::string::npos);
  CHECK(error_of(head + "A,s,t,five,0\n").find("not an integer") != std::string::npos);
  const auto dup = error_of(head + "A,s,t,5,0\nB,s,t,5,0\nA,s,t,6,1\n");
  CHECK(dup.find("line 4") != std::string::npos);
  CHECK(dup.find("first at line 2") != std::string::npos);
  CHECK(error_of("assessor,sample,liking,jar\nA,s,5,0\n").find("missing column 'attribute'") !=
        std::string::npos);
  CHECK(error_of(head + "A,s,t,5\n").find("line 2") != std::string::npos);
  CHECK(error_of(head + "A,s,t,5,0\nA,s2,t,5,\n").find("field 'jar'") != std::string::npos);
  CHECK(error_of("").find("missing header") != std::string::npos);
}

TEST_CASE("liking-only rows, extra columns and quoting") {
  std::istringstream in(
      "note,assessor,sample,attribute,liking,jar\n"
      "x,A,\"s, one\",t,5,0\n"
      "y,A,\"s, one\",overall,7,\n"
      "\n"
      "z,B,s2,t,3,-2\r\n");
  const auto ds = ingest_csv(in);
  CHECK(ds.evaluations().size() == 2);
  CHECK(ds.liking_only().size() == 1);
  CHECK(ds.samples().front() == "s, one");
  CHECK(ds.evaluations()[1].jar.value() == -2);
  std::stringstream out;
  write_csv(ds, out);
  CHECK(ingest_csv(out) == ds);
}

TEST_CASE("wide layout converts to long") {
  std::istringstream in(
      "assessor,sample,colour_liking,colour_jar,overall_liking\n"
      "A,C,5,0,6\n"
      "A,RS2,7,-1,8\n"
      "B,C,2,2,\n");
  const auto ds = ingest_wide_csv(in);
  CHECK(ds.attributes() == std::vector<std::string>{"colour"});
  CHECK(ds.liking_only_attributes() == std::vector<std::string>{"overall"});
  CHECK(ds.evaluations().size() == 3);
  CHECK(ds.liking_only().size() == 2);
  std::istringstream bad("assessor,sample,colour_jar\nA,C,1\n");
  CHECK_THROWS_AS(ingest_wide_csv(bad), Error);
}

TEST_CASE("full-panel table ingests with its counts intact") {
  std::istringstream in(full_panel_csv());
  const auto ds = ingest_csv(in);
  CHECK(ds.assessors().size() == 100);
  CHECK(ds.samples().size() == 10);
  CHECK(ds.attributes().size() == 9);
  const auto report = analyze(ds, quick_config());
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 5; ++c) {
      CHECK(report.contingency.count(r, c) ==
            published::kFullPanel[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
  }

  const auto dir = scratch("full_panel");
  emit_report(report, dir, ReportFormat::csv_bundle);
  const auto contingency = slurp(dir / "tables/contingency.csv");
  CHECK(contingency.find("liking,-2,-1,0,1,2\n1,77,39,37,43,131\n") == 0);

  std::istringstream normalized(slurp(dir / "tables/contingency_normalized.csv"));
  std::string line;
  std::getline(normalized, line);
  int row = 0;
  while (std::getline(normalized, line)) {
    const auto fields = split_csv_line(line);
    REQUIRE(fields.size() == 6);
    double sum = 0;
    for (std::size_t c = 1; c < fields.size(); ++c) sum += std::stod(fields[c]);
    CHECK(std::fabs(sum - 100.0) <= 0.01 + 1e-9);
    if (row == 0) {
      for (std::size_t c = 1; c < fields.size(); ++c) {
        CHECK(std::fabs(std::stod(fields[c]) - published::kFullPanelFirstRowPct[c - 1]) <= 0.01);
      }
    }
    ++row;
  }
  CHECK(row == 9);
  fs::remove_all(dir);
}

TEST_CASE("report JSON is stable and self-describing") {
  PanelSpec spec;
  spec.archetypes = {{Archetype::ideal_point, 0.75, 10}, {Archetype::random_responder, 0.75, 6}};
  spec.seed = 21;
  const auto ds = generate(spec);
  const auto cfg = quick_config();
  const auto a = to_json(analyze(ds, cfg)).dump(2);
  const auto b = to_json(analyze(ds, cfg)).dump(2);
  CHECK(a == b);

  const auto doc = nlohmann::ordered_json::parse(a);
  CHECK(doc.dump(2) == a);  // parse then emit reproduces the document
  CHECK(doc["metadata"]["alpha"] == 0.05);
  CHECK(doc["metadata"]["method"] == "permutation");
  CHECK(doc["metadata"]["m_policy"] == "fixed");
  const auto& assessors = doc["classification"]["assessors"];
  REQUIRE(assessors.size() == 16);
  std::set<std::string> ids;
  for (const auto& x : assessors) ids.insert(x["assessor_id"].get<std::string>());
  CHECK(ids.size() == 16);
  CHECK(doc["regressions"]["attributes"].contains("consistent"));
  CHECK(doc["group_comparisons"].contains("sd_liking"));
  CHECK(doc["attribute_tau"].size() == 9);
}

TEST_CASE("sections that cannot be computed carry an error instead") {
  // Everyone is perfectly consistent: the inconsistent group is empty.
  std::vector<Evaluation> evals;
  for (int a = 0; a < 3; ++a) {
    for (int s = 0; s < 9; ++s) {
      const int jar = s < 3 ? 0 : (s < 6 ? 1 : -2);
      const int liking = 9 - s;
      evals.push_back({"A" + std::to_string(a), "s" + std::to_string(s), "t", LikingScore(liking),
                       JarScore(jar)});
    }
  }
  const auto ds = Dataset::from_records(evals);
  const auto report = analyze(ds, quick_config());
  CHECK(report.classification.consistent == 3);
  for (const auto& c : report.comparisons) {
    CHECK_FALSE(c.value);
    CHECK_FALSE(c.error.empty());
  }
  CHECK_FALSE(report.attribute_model.value);  // no global_liking
  const auto json = to_json(report);
  CHECK(json["regressions"]["attributes"].contains("error"));
}

TEST_CASE("emit_report surfaces the failing path") {
  const auto blocker = scratch("blocked");
  { std::ofstream(blocker) << "file in the way"; }
  PanelSpec spec;
  spec.archetypes = {{Archetype::ideal_point, 0.75, 4}};
  const auto report = analyze(generate(spec), quick_config());
  try {
    emit_report(report, blocker / "out", ReportFormat::json);
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
    CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
  }
  fs::remove(blocker);
}

TEST_CASE("CSV bundle mirrors the descriptive layouts") {
  PanelSpec spec;
  spec.archetypes = {{Archetype::ideal_point, 0.75, 6}, {Archetype::random_responder, 0.75, 4}};
  spec.seed = 2;
  const auto report = analyze(generate(spec), quick_config());
  const auto dir = scratch("bundle");
  const auto written = emit_report(report, dir, ReportFormat::csv_bundle);
  CHECK(written.size() >= 10);
  std::istringstream liking(slurp(dir / "tables/liking_stats.csv"));
  std::string header;
  std::getline(liking, header);
  CHECK(header == "attribute,statistic,C,RS2,RS5,RS10,SF2,SF5,SF10,PH2,PH5,PH10,All");
  std::string first;
  std::getline(liking, first);
  CHECK(first.rfind("colour,mean,", 0) == 0);
  const auto jar = slurp(dir / "tables/jar_stats.csv");
  CHECK(jar.find("colour,significant_vs_zero,") != std::string::npos);
  CHECK(slurp(dir / "tables/liking_stats.csv").find("global_liking,mean,") != std::string::npos);
  const auto fits = slurp(dir / "tables/regressions.txt");
  for (const char* field : {"Estimate", "Std. Error", "t value", "Pr(>|t|)", "Multiple R-squared",
                            "Adjusted R-squared"}) {
    CHECK(fits.find(field) != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("round_sig6") {
  CHECK(round_sig6(0.123456789) == 0.123457);
  CHECK(round_sig6(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(round_sig6(-1e-30 * 0)));
  CHECK(round_sig6(123456789.0) == 123457000.0);
}
