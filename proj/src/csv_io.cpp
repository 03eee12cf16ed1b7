#include "jarcon/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "jarcon/error.hpp"

namespace jarcon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, std::string_view message) {
  throw Error(ErrorCode::validation, fmt::format("{}: line {}: {}", source, line, message));
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return value;
}

// Reads one logical line; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool blank(std::string_view line) { return trim(line).empty(); }

template <typename Score>
Score parse_score(std::string_view source, std::size_t line, std::string_view field,
                  std::string_view text) {
  const auto value = parse_int(text);
  if (!value) fail(source, line, fmt::format("field '{}': '{}' is not an integer", field, text));
  if (*value < Score::kMin || *value > Score::kMax) {
    fail(source, line, fmt::format("field '{}': value {} out of range [{}, {}]", field, *value,
                                   Score::kMin, Score::kMax));
  }
  return Score(*value);
}

// Shared bookkeeping for both CSV layouts.
class RecordSink {
 public:
  explicit RecordSink(std::string_view source) : source_(source) {}

  void add(std::size_t line, std::string assessor, std::string sample, std::string attribute,
           LikingScore liking, std::optional<JarScore> jar) {
    if (assessor.empty()) fail(source_, line, "field 'assessor': empty");
    if (sample.empty()) fail(source_, line, "field 'sample': empty");
    if (attribute.empty()) fail(source_, line, "field 'attribute': empty");

    const bool paired = jar.has_value();
    const auto [kind, inserted] = kinds_.try_emplace(attribute, paired, line);
    if (!inserted && kind->second.first != paired) {
      fail(source_, line,
           fmt::format("field 'jar': attribute '{}' is {} at line {} but {} here", attribute,
                       kind->second.first ? "paired" : "liking-only", kind->second.second,
                       paired ? "paired" : "has no JAR score"));
    }
    auto key = fmt::format("{}\x1f{}\x1f{}", assessor, sample, attribute);
    const auto [seen, fresh] = keys_.try_emplace(std::move(key), line);
    if (!fresh) {
      fail(source_, line,
           fmt::format("duplicate (assessor, sample, attribute) = ({}, {}, {}), first at line {}",
                       assessor, sample, attribute, seen->second));
    }
    if (paired) {
      evaluations_.push_back(
          {std::move(assessor), std::move(sample), std::move(attribute), liking, *jar});
    } else {
      liking_only_.push_back({std::move(assessor), std::move(sample), std::move(attribute), liking});
    }
  }

  Dataset finish() {
    return Dataset::from_records(std::move(evaluations_), std::move(liking_only_));
  }

 private:
  std::string_view source_;
  std::unordered_map<std::string, std::pair<bool, std::size_t>> kinds_;
  std::unordered_map<std::string, std::size_t> keys_;
  std::vector<Evaluation> evaluations_;
  std::vector<LikingOnlyRecord> liking_only_;
};

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
      field = trim(field);
    } else if (ch == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      if (!was_quoted) field += ch;
    }
  }
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

Dataset ingest_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) fail(source, 1, "missing header row");
  const auto header = split_csv_line(line);

  static constexpr std::array<std::string_view, 5> kColumns = {"assessor", "sample", "attribute",
                                                               "liking", "jar"};
  std::array<std::size_t, 5> column{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) fail(source, 1, fmt::format("missing column '{}'", kColumns[c]));
    column[c] = static_cast<std::size_t>(it - header.begin());
  }

  RecordSink sink(source);
  while (next_line(in, line, line_no)) {
    if (blank(line)) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < header.size()) {
      fail(source, line_no,
           fmt::format("expected {} fields, got {}", header.size(), fields.size()));
    }
    const auto liking = parse_score<LikingScore>(source, line_no, "liking", fields[column[3]]);
    std::optional<JarScore> jar;
    if (!fields[column[4]].empty()) {
      jar = parse_score<JarScore>(source, line_no, "jar", fields[column[4]]);
    }
    sink.add(line_no, fields[column[0]], fields[column[1]], fields[column[2]], liking, jar);
  }
  return sink.finish();
}

Dataset ingest_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", path.string()));
  return ingest_csv(in, path.string());
}

Dataset ingest_wide_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) fail(source, 1, "missing header row");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "assessor" || header[1] != "sample") {
    fail(source, 1, "wide header must start with assessor,sample");
  }

  struct Columns {
    std::optional<std::size_t> liking;
    std::optional<std::size_t> jar;
  };
  std::vector<std::string> order;
  std::map<std::string, Columns> attrs;
  auto suffix = [](std::string_view name, std::string_view tail) {
    return name.size() > tail.size() && name.substr(name.size() - tail.size()) == tail;
  };
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string_view name = header[c];
    std::string attr;
    bool is_liking = false;
    if (suffix(name, "_liking")) {
      attr = name.substr(0, name.size() - 7);
      is_liking = true;
    } else if (suffix(name, "_jar")) {
      attr = name.substr(0, name.size() - 4);
    } else {
      fail(source, 1, fmt::format("column '{}' ends in neither _liking nor _jar", name));
    }
    if (!attrs.count(attr)) order.push_back(attr);
    auto& cols = attrs[attr];
    (is_liking ? cols.liking : cols.jar) = c;
  }
  for (const auto& attr : order) {
    if (!attrs[attr].liking) fail(source, 1, fmt::format("attribute '{}' has no _liking column", attr));
  }

  RecordSink sink(source);
  while (next_line(in, line, line_no)) {
    if (blank(line)) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < header.size()) {
      fail(source, line_no,
           fmt::format("expected {} fields, got {}", header.size(), fields.size()));
    }
    for (const auto& attr : order) {
      const auto& cols = attrs[attr];
      const auto& liking_text = fields[*cols.liking];
      const std::string empty;
      const auto& jar_text = cols.jar ? fields[*cols.jar] : empty;
      if (liking_text.empty() && jar_text.empty()) continue;
      const auto liking_field = attr + "_liking";
      const auto jar_field = attr + "_jar";
      if (liking_text.empty()) fail(source, line_no, fmt::format("field '{}': empty", liking_field));
      const auto liking = parse_score<LikingScore>(source, line_no, liking_field, liking_text);
      std::optional<JarScore> jar;
      if (cols.jar) {
        if (jar_text.empty()) fail(source, line_no, fmt::format("field '{}': empty", jar_field));
        jar = parse_score<JarScore>(source, line_no, jar_field, jar_text);
      }
      sink.add(line_no, fields[0], fields[1], attr, liking, jar);
    }
  }
  return sink.finish();
}

void write_csv(const Dataset& ds, std::ostream& out) {
  out << "assessor,sample,attribute,liking,jar\n";
  for (const auto& e : ds.evaluations()) {
    out << csv_escape(e.assessor_id) << ',' << csv_escape(e.sample_id) << ','
        << csv_escape(e.attribute) << ',' << e.liking.value() << ',' << e.jar.value() << '\n';
  }
  for (const auto& r : ds.liking_only()) {
    out << csv_escape(r.assessor_id) << ',' << csv_escape(r.sample_id) << ','
        << csv_escape(r.attribute) << ',' << r.liking.value() << ",\n";
  }
}

void write_csv_file(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, fmt::format("cannot write '{}'", path.string()));
  write_csv(ds, out);
  if (!out) throw Error(ErrorCode::io, fmt::format("write failed for '{}'", path.string()));
}

}  // namespace jarcon
