// jarcon: consistency analysis of liking/JAR panels.
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "jarcon/csv_io.hpp"
#include "jarcon/error.hpp"
#include "jarcon/http_api.hpp"
#include "jarcon/live_service.hpp"
#include "jarcon/plots.hpp"
#include "jarcon/report.hpp"
#include "jarcon/synth.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

struct ClassifyFlags {
  double alpha = 0.05;
  std::string method = "permutation";
  std::size_t permutations = 2000;
  std::uint64_t seed = 0;
  std::string m_policy = "fixed";
  unsigned threads = 0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--alpha", alpha, "Significance level, in (0, 0.5]")->capture_default_str();
    cmd.add_option("--method", method, "permutation or asymptotic")->capture_default_str();
    cmd.add_option("--permutations,-B", permutations, "Permutations per assessor (>= 100)")
        ->capture_default_str();
    cmd.add_option("--seed", seed, "Seed for the permutation test")->capture_default_str();
    cmd.add_option("--m-policy", m_policy, "fixed (m = 3) or observed")->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  }

  jarcon::ClassifyOptions resolve() const {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
      throw jarcon::Error(jarcon::ErrorCode::validation, "--alpha must lie in (0, 0.5]");
    }
    if (permutations < 100) {
      throw jarcon::Error(jarcon::ErrorCode::validation, "--permutations must be at least 100");
    }
    jarcon::ClassifyOptions o;
    o.alpha = alpha;
    o.method = jarcon::parse_test_method(method);
    o.permutations = permutations;
    o.seed = seed;
    o.m_policy = jarcon::parse_m_policy(m_policy);
    o.threads = threads;
    return o;
  }
};

std::string default_out_dir() {
  const char* env = std::getenv("JARCON_OUT_DIR");
  return env && *env ? env : "jarcon_out";
}

int run_analyze(const std::string& input, bool wide, const std::string& out_dir,
                const ClassifyFlags& flags, const std::string& response,
                const std::string& taste) {
  jarcon::AnalysisConfig config;
  config.classify = flags.resolve();
  config.response_attribute = response;
  config.taste_attribute = taste;
  config.metadata.emplace_back("input", input);

  jarcon::Dataset ds;
  if (input == "-") {
    ds = wide ? jarcon::ingest_wide_csv(std::cin, "<stdin>") : jarcon::ingest_csv(std::cin, "<stdin>");
  } else {
    std::ifstream in(input);
    if (!in) throw jarcon::Error(jarcon::ErrorCode::io, fmt::format("cannot open '{}'", input));
    ds = wide ? jarcon::ingest_wide_csv(in, input) : jarcon::ingest_csv(in, input);
  }
  if (ds.evaluations().empty()) {
    throw jarcon::Error(jarcon::ErrorCode::validation,
                        fmt::format("{}: no paired liking/JAR evaluations", input));
  }

  const auto report = jarcon::analyze(ds, config);
  jarcon::emit_report(report, out_dir, jarcon::ReportFormat::json);
  jarcon::emit_report(report, out_dir, jarcon::ReportFormat::csv_bundle);
  jarcon::emit_plots(report, out_dir);
  for (const auto& s : report.comparisons) {
    if (!s.value) std::cerr << "note: comparison " << s.key << ": " << s.error << '\n';
  }
  std::cout << fmt::format("consistent={} inconsistent={} unclassifiable={}\n",
                           report.classification.consistent, report.classification.inconsistent,
                           report.classification.unclassifiable);
  return kOk;
}

int run_simulate(const std::vector<std::string>& archetypes, std::size_t samples,
                 std::size_t attributes, std::uint64_t seed, bool global_liking,
                 const std::string& out) {
  jarcon::PanelSpec spec;
  for (const auto& a : archetypes) spec.archetypes.push_back(jarcon::parse_archetype_spec(a));
  spec.samples = samples;
  spec.attributes = attributes;
  spec.seed = seed;
  spec.global_liking = global_liking;
  const auto ds = jarcon::generate(spec);
  if (out.empty() || out == "-") {
    jarcon::write_csv(ds, std::cout);
    std::cout.flush();
  } else {
    jarcon::write_csv_file(ds, out);
  }
  std::cerr << "seed=" << seed << '\n';
  return kOk;
}

int run_serve(const std::string& host, int port, const std::string& log,
              const std::string& export_dir, const ClassifyFlags& flags, int high, int low) {
  jarcon::ServiceConfig config;
  config.classify = flags.resolve();
  config.thresholds = {high, low};
  if (!log.empty()) config.log_path = log;
  if (!export_dir.empty()) config.export_dir = export_dir;

  // Block the shutdown signals before any thread starts so sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  jarcon::SessionStore store(config);
  jarcon::HttpServer server(store);
  const int bound = server.bind(host, port);
  std::cout << fmt::format("listening on {}:{}\n", host, bound) << std::flush;

  std::thread worker([&server] { server.run(); });
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  worker.join();
  std::cerr << "shutting down\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency analysis of liking and just-about-right panels"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Classify assessors and write the full report");
  std::string input;
  bool wide = false;
  std::string out_dir = default_out_dir();
  std::string response = "global_liking";
  std::string taste = "global_taste";
  ClassifyFlags analyze_flags;
  analyze->add_option("--input,-i", input, "Long CSV file, or - for standard input")->required();
  analyze->add_flag("--wide", wide, "Input uses assessor,sample,<attr>_liking,<attr>_jar columns");
  analyze->add_option("--out,-o", out_dir, "Output directory (default $JARCON_OUT_DIR or jarcon_out)");
  analyze->add_option("--response", response, "Liking attribute used as regression response")
      ->capture_default_str();
  analyze->add_option("--taste-attribute", taste, "Attribute for the single-predictor model")
      ->capture_default_str();
  analyze_flags.add_to(*analyze);

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic panel as long CSV");
  std::vector<std::string> archetypes;
  std::size_t samples = 10;
  std::size_t attributes = 9;
  std::uint64_t sim_seed = 0;
  bool no_global = false;
  std::string sim_out;
  simulate->add_option("--archetype,-a", archetypes, "kind:count[:noise_sd], repeatable")
      ->required();
  simulate->add_option("--samples", samples, "Samples per assessor")->capture_default_str();
  simulate->add_option("--attributes", attributes, "Paired attributes per sample")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Generator seed")->capture_default_str();
  simulate->add_flag("--no-global-liking", no_global, "Omit the liking-only global_liking records");
  simulate->add_option("--out,-o", sim_out, "Output CSV (default standard output)");

  auto* serve = app.add_subcommand("serve", "Run the live session HTTP service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log;
  std::string export_dir;
  int high = 8;
  int low = 2;
  ClassifyFlags serve_flags;
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--log", log, "Append-only session event log (JSON lines)");
  serve->add_option("--export-dir", export_dir, "Directory for closed-session CSVs");
  serve->add_option("--warn-high-liking", high, "R1 threshold")->capture_default_str();
  serve->add_option("--warn-low-liking", low, "R2 threshold")->capture_default_str();
  serve_flags.add_to(*serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(input, wide, out_dir, analyze_flags, response, taste);
    if (*simulate) {
      return run_simulate(archetypes, samples, attributes, sim_seed, !no_global, sim_out);
    }
    if (*serve) return run_serve(host, port, log, export_dir, serve_flags, high, low);
  } catch (const jarcon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == jarcon::ErrorCode::io ? kRuntime : kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
