#include "jarcon/live_service.hpp"

#include <chrono>
#include <ctime>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "json.hpp"

#include "jarcon/csv_io.hpp"
#include "jarcon/error.hpp"

namespace jarcon {

std::vector<WarningRule> default_rules(const WarningThresholds& t) {
  for (int v : {t.high_liking, t.low_liking}) {
    if (v < LikingScore::kMin || v > LikingScore::kMax) {
      throw Error(ErrorCode::validation,
                  fmt::format("warning threshold {} is outside the liking scale", v));
    }
  }
  const int high = t.high_liking;
  const int low = t.low_liking;
  return {
      {"R1",
       fmt::format("liking of {} or more with an extreme JAR score (-2 or +2); please review",
                   high),
       [high](int liking, int jar) { return liking >= high && (jar == 2 || jar == -2); }},
      {"R2",
       fmt::format("liking of {} or less while the intensity was rated just about right; please "
                   "review",
                   low),
       [low](int liking, int jar) { return liking <= low && jar == 0; }},
  };
}

std::vector<RuleHit> check_suspicious(LikingScore liking, JarScore jar,
                                      std::span<const WarningRule> rules) {
  std::vector<RuleHit> hits;
  for (const auto& rule : rules) {
    if (rule.predicate(liking.value(), jar.value())) hits.push_back({rule.id, rule.description});
  }
  return hits;
}

std::vector<RuleHit> check_suspicious(LikingScore liking, JarScore jar) {
  static const auto rules = default_rules();
  return check_suspicious(liking, jar, rules);
}

struct SessionStore::Session {
  mutable std::mutex mutex;
  SessionSnapshot state;
  std::map<std::pair<std::string, std::string>, std::size_t> index;  // (sample, attribute) -> item
};

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::vector<ScorePair> session_pairs(const SessionSnapshot& s) {
  std::vector<ScorePair> pairs;
  pairs.reserve(s.items.size());
  for (const auto& item : s.items) pairs.push_back({item.liking.value(), item.jar.value()});
  return pairs;
}

std::optional<TauResult> running_tau(const SessionSnapshot& s, MPolicy policy) {
  if (s.items.size() < 2) return std::nullopt;
  const auto pairs = session_pairs(s);
  try {
    return tau_c(build_contingency(pairs, true), policy);
  } catch (const Error&) {
    return std::nullopt;  // observed-support policy with a single |JAR| level
  }
}

void refresh_warnings(SessionSnapshot& s) {
  s.warnings.clear();
  for (const auto& item : s.items) {
    for (const auto& hit : item.warnings) s.warnings.push_back({item.sample, item.attribute, hit});
  }
}

}  // namespace

SessionStore::SessionStore(ServiceConfig config)
    : config_(std::move(config)), rules_(default_rules(config_.thresholds)) {
  if (!config_.log_path) return;
  if (std::filesystem::exists(*config_.log_path)) replay(*config_.log_path);
  if (config_.log_path->has_parent_path()) {
    std::filesystem::create_directories(config_.log_path->parent_path());
  }
  log_.open(*config_.log_path, std::ios::app | std::ios::binary);
  if (!log_) {
    throw Error(ErrorCode::io,
                fmt::format("cannot open session log '{}'", config_.log_path->string()));
  }
}

SessionStore::~SessionStore() = default;

void SessionStore::log_event(const std::string& line) {
  if (!log_.is_open()) return;
  std::lock_guard lock(log_mutex_);
  log_ << line << '\n';
  log_.flush();
  if (!log_) throw Error(ErrorCode::io, "session log write failed");
}

void SessionStore::replay(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot read session log '{}'", path.string()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto ev = nlohmann::json::parse(line);
      const auto kind = ev.at("event").get<std::string>();
      const auto id = ev.at("session").get<std::string>();
      if (kind == "create") {
        create_impl(id, ev.at("assessor").get<std::string>(), ev.at("created").get<std::string>(),
                    false);
        continue;
      }
      auto session = find(id);
      std::lock_guard lock(session->mutex);
      if (kind == "append") {
        append_locked(*session,
                      {ev.at("sample").get<std::string>(), ev.at("attribute").get<std::string>(),
                       ev.at("liking").get<int>(), ev.at("jar").get<int>(),
                       ev.at("revision").get<bool>()},
                      false);
      } else if (kind == "close") {
        close_locked(*session, false);
      } else {
        throw Error(ErrorCode::validation, fmt::format("unknown event '{}'", kind));
      }
    } catch (const std::exception& e) {
      throw Error(ErrorCode::validation,
                  fmt::format("{}: line {}: cannot replay event: {}", path.string(), line_no,
                              e.what()));
    }
  }
}

std::shared_ptr<SessionStore::Session> SessionStore::find(std::string_view session_id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::not_found, fmt::format("no session '{}'", session_id));
  }
  return it->second;
}

std::string SessionStore::create(std::string assessor_id) {
  return create_impl({}, std::move(assessor_id), utc_now(), true);
}

std::string SessionStore::create_impl(std::string id, std::string assessor_id, std::string created,
                                      bool log) {
  auto session = std::make_shared<Session>();
  {
    std::unique_lock lock(sessions_mutex_);
    if (id.empty()) {
      id = fmt::format("S{:06d}", next_id_);
    } else if (sessions_.count(id)) {
      throw Error(ErrorCode::conflict, fmt::format("session '{}' already exists", id));
    }
    // Keep numbering ahead of replayed ids.
    if (id.size() > 1 && id[0] == 'S') {
      try {
        next_id_ = std::max(next_id_, std::stoul(id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
    if (next_id_ <= sessions_.size()) next_id_ = sessions_.size() + 1;
    session->state.session_id = id;
    session->state.assessor_id = assessor_id.empty() ? id : std::move(assessor_id);
    session->state.created = std::move(created);
    sessions_.emplace(id, session);
    if (log) {
      // Logged under the map lock so replay sees creates in id order.
      log_event(nlohmann::json{{"event", "create"},
                               {"session", id},
                               {"assessor", session->state.assessor_id},
                               {"created", session->state.created}}
                    .dump());
    }
  }
  return id;
}

AppendAck SessionStore::append(std::string_view session_id, const AppendRequest& request) {
  auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return append_locked(*session, request, true);
}

AppendAck SessionStore::append_locked(Session& s, const AppendRequest& request, bool log) {
  auto& st = s.state;
  if (!st.open) {
    throw Error(ErrorCode::conflict, fmt::format("session '{}' is closed", st.session_id));
  }
  if (request.sample.empty()) throw Error(ErrorCode::validation, "field 'sample': empty");
  if (request.attribute.empty()) throw Error(ErrorCode::validation, "field 'attribute': empty");
  const LikingScore liking(request.liking);
  const JarScore jar(request.jar);

  const auto key = std::make_pair(request.sample, request.attribute);
  const auto existing = s.index.find(key);
  if (existing != s.index.end() && !request.revision) {
    throw Error(ErrorCode::conflict,
                fmt::format("({}, {}) already answered; set revision to replace it",
                            request.sample, request.attribute));
  }
  if (existing == s.index.end() && request.revision) {
    throw Error(ErrorCode::conflict, fmt::format("({}, {}) has no answer to revise",
                                                 request.sample, request.attribute));
  }

  AppendAck ack;
  ack.warnings = check_suspicious(liking, jar, rules_);
  if (log) {
    log_event(nlohmann::json{{"event", "append"},
                             {"session", st.session_id},
                             {"sample", request.sample},
                             {"attribute", request.attribute},
                             {"liking", request.liking},
                             {"jar", request.jar},
                             {"revision", request.revision}}
                  .dump());
  }
  if (existing != s.index.end()) {
    auto& item = st.items[existing->second];
    item.liking = liking;
    item.jar = jar;
    item.warnings = ack.warnings;
    ++item.revisions;
    ack.revised = true;
  } else {
    s.index.emplace(key, st.items.size());
    st.items.push_back({request.sample, request.attribute, liking, jar, ack.warnings, 0});
  }
  refresh_warnings(st);
  st.running_tau = running_tau(st, config_.classify.m_policy);
  ack.running_tau = st.running_tau;
  ack.n = st.items.size();
  return ack;
}

SessionSnapshot SessionStore::snapshot(std::string_view session_id) const {
  auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return session->state;
}

CloseResult SessionStore::close(std::string_view session_id) {
  auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return close_locked(*session, true);
}

CloseResult SessionStore::close_locked(Session& s, bool log) {
  auto& st = s.state;
  if (!st.open) {
    throw Error(ErrorCode::conflict, fmt::format("session '{}' is already closed", st.session_id));
  }
  if (log) log_event(nlohmann::json{{"event", "close"}, {"session", st.session_id}}.dump());
  st.open = false;
  const auto pairs = session_pairs(st);
  st.verdict = classify_assessor(pairs, st.assessor_id, config_.classify, &st.unclassifiable_reason);

  CloseResult result;
  result.snapshot = st;
  for (const auto& item : st.items) {
    result.fragment.push_back({st.assessor_id, item.sample, item.attribute, item.liking, item.jar});
  }
  if (config_.export_dir) {
    const auto path = *config_.export_dir / (st.session_id + ".csv");
    std::error_code ec;
    std::filesystem::create_directories(*config_.export_dir, ec);
    std::ofstream out(path, std::ios::binary);
    out << session_csv(st);
    if (!out) throw Error(ErrorCode::io, fmt::format("cannot write '{}'", path.string()));
    result.export_path = path;
  }
  return result;
}

std::vector<std::string> SessionStore::session_ids() const {
  std::shared_lock lock(sessions_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

std::string session_csv(const SessionSnapshot& snapshot, bool header) {
  std::string out = header ? "assessor,sample,attribute,liking,jar,warnings\n" : "";
  for (const auto& item : snapshot.items) {
    std::string rules;
    for (const auto& w : item.warnings) {
      if (!rules.empty()) rules += ';';
      rules += w.rule_id;
    }
    out += fmt::format("{},{},{},{},{},{}\n", csv_escape(snapshot.assessor_id),
                       csv_escape(item.sample), csv_escape(item.attribute), item.liking.value(),
                       item.jar.value(), rules);
  }
  return out;
}

std::string SessionStore::export_csv() const {
  std::string out = "assessor,sample,attribute,liking,jar,warnings\n";
  for (const auto& id : session_ids()) {
    const auto s = snapshot(id);
    if (!s.open) out += session_csv(s, false);
  }
  return out;
}

}  // namespace jarcon
