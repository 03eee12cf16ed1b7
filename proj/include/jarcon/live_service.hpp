#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jarcon/association.hpp"
#include "jarcon/core_model.hpp"
#include "jarcon/inference.hpp"

namespace jarcon {

struct WarningRule {
  std::string id;
  std::string description;
  std::function<bool(int liking, int jar)> predicate;
};

struct WarningThresholds {
  int high_liking = 8;  // R1: liking at or above this with |JAR| = 2
  int low_liking = 2;   // R2: liking at or below this with JAR = 0
};

/// R1 and R2 with the given thresholds. Throws Error(validation) if a
/// threshold lies outside the liking scale.
std::vector<WarningRule> default_rules(const WarningThresholds& thresholds = {});

struct RuleHit {
  std::string rule_id;
  std::string description;
  friend bool operator==(const RuleHit&, const RuleHit&) = default;
};

std::vector<RuleHit> check_suspicious(LikingScore liking, JarScore jar,
                                      std::span<const WarningRule> rules);
std::vector<RuleHit> check_suspicious(LikingScore liking, JarScore jar);

struct ServiceConfig {
  ClassifyOptions classify;
  WarningThresholds thresholds;
  /// Append-only JSON-lines event log; replayed on construction when present.
  std::optional<std::filesystem::path> log_path;
  /// Closed sessions are also written here as <session_id>.csv.
  std::optional<std::filesystem::path> export_dir;
};

struct AppendRequest {
  std::string sample;
  std::string attribute;
  int liking = 0;
  int jar = 0;
  bool revision = false;
};

struct SessionItem {
  std::string sample;
  std::string attribute;
  LikingScore liking;
  JarScore jar;
  std::vector<RuleHit> warnings;  // hits for the stored scores
  int revisions = 0;
};

struct AppendAck {
  std::vector<RuleHit> warnings;
  std::optional<TauResult> running_tau;  // present once n >= 2
  std::size_t n = 0;
  bool revised = false;
};

struct SessionWarning {
  std::string sample;
  std::string attribute;
  RuleHit hit;
};

struct SessionSnapshot {
  std::string session_id;
  std::string assessor_id;
  std::string created;  // UTC, ISO 8601
  bool open = true;
  std::vector<SessionItem> items;  // answer order; revisions keep their slot
  std::optional<TauResult> running_tau;
  std::vector<SessionWarning> warnings;  // over the stored items
  std::optional<ConsistencyVerdict> verdict;  // set once closed
  std::string unclassifiable_reason;
};

struct CloseResult {
  SessionSnapshot snapshot;
  std::vector<Evaluation> fragment;
  std::optional<std::filesystem::path> export_path;
};

/// Thread-safe store of live questionnaire sessions. Operations on different
/// sessions run concurrently; operations on one session are serialized.
class SessionStore {
 public:
  explicit SessionStore(ServiceConfig config = {});
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// Returns the new session id. An empty assessor id defaults to the
  /// session id.
  std::string create(std::string assessor_id = {});

  /// Throws not_found, conflict (closed session, or an answered item without
  /// the revision flag, or a revision of an unanswered item) or validation.
  AppendAck append(std::string_view session_id, const AppendRequest& request);

  SessionSnapshot snapshot(std::string_view session_id) const;

  /// Seals the session and computes the verdict with the configured test.
  /// Throws conflict when already closed.
  CloseResult close(std::string_view session_id);

  std::vector<std::string> session_ids() const;

  /// Closed sessions merged into the long CSV layout, with a trailing
  /// `warnings` column (rule ids joined by ';').
  std::string export_csv() const;

  const ServiceConfig& config() const { return config_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(std::string_view session_id) const;
  std::string create_impl(std::string id, std::string assessor_id, std::string created, bool log);
  AppendAck append_locked(Session& s, const AppendRequest& request, bool log);
  CloseResult close_locked(Session& s, bool log);
  void log_event(const std::string& line);
  void replay(const std::filesystem::path& path);

  ServiceConfig config_;
  std::vector<WarningRule> rules_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
  std::size_t next_id_ = 1;
  std::mutex log_mutex_;
  std::ofstream log_;
};

/// Long CSV rows (header included) for one closed session.
std::string session_csv(const SessionSnapshot& snapshot, bool header = true);

}  // namespace jarcon
