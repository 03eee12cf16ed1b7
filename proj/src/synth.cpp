#include "jarcon/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "jarcon/error.hpp"
#include "jarcon/rng.hpp"

namespace jarcon {

std::string_view to_string(Archetype kind) noexcept {
  switch (kind) {
    case Archetype::ideal_point: return "ideal_point";
    case Archetype::random_responder: return "random_responder";
    case Archetype::scale_confuser: return "scale_confuser";
    case Archetype::reversed: return "reversed";
  }
  return "unknown";
}

Archetype parse_archetype(std::string_view name) {
  if (name == "ideal_point" || name == "ideal") return Archetype::ideal_point;
  if (name == "random_responder" || name == "random") return Archetype::random_responder;
  if (name == "scale_confuser" || name == "confuser") return Archetype::scale_confuser;
  if (name == "reversed") return Archetype::reversed;
  throw Error(ErrorCode::validation, fmt::format("unknown archetype '{}'", name));
}

ArchetypeSpec parse_archetype_spec(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorCode::validation,
                fmt::format("archetype '{}' must look like kind:count[:noise_sd]", text));
  }
  ArchetypeSpec spec;
  spec.kind = parse_archetype(parts[0]);
  const auto count = parts[1];
  if (auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), spec.count);
      ec != std::errc() || ptr != count.data() + count.size()) {
    throw Error(ErrorCode::validation, fmt::format("archetype count '{}' is not a number", count));
  }
  if (parts.size() == 3) {
    try {
      std::size_t used = 0;
      const std::string noise(parts[2]);
      spec.noise_sd = std::stod(noise, &used);
      if (used != noise.size()) throw std::invalid_argument(noise);
    } catch (const std::exception&) {
      throw Error(ErrorCode::validation,
                  fmt::format("archetype noise '{}' is not a number", parts[2]));
    }
  }
  if (!(spec.noise_sd >= 0.0)) {
    throw Error(ErrorCode::validation, "archetype noise_sd must be non-negative");
  }
  return spec;
}

void validate(const PanelSpec& spec) {
  std::size_t total = 0;
  for (const auto& a : spec.archetypes) {
    if (!(a.noise_sd >= 0.0) || !std::isfinite(a.noise_sd)) {
      throw Error(ErrorCode::validation, "archetype noise_sd must be finite and non-negative");
    }
    total += a.count;
  }
  if (total == 0) throw Error(ErrorCode::validation, "panel needs at least one assessor");
  if (spec.samples == 0) throw Error(ErrorCode::validation, "panel needs at least one sample");
  if (spec.attributes == 0) throw Error(ErrorCode::validation, "panel needs at least one attribute");
}

std::string synthetic_sample_name(std::size_t index) {
  static constexpr std::array<std::string_view, 10> kNames = {
      "C", "RS2", "RS5", "RS10", "SF2", "SF5", "SF10", "PH2", "PH5", "PH10"};
  if (index < kNames.size()) return std::string(kNames[index]);
  return fmt::format("S{}", index + 1);
}

std::string synthetic_attribute_name(std::size_t index) {
  static constexpr std::array<std::string_view, 9> kNames = {
      "colour",      "global_odour",    "sweet_odour", "margarine_odour", "global_taste",
      "sweet_taste", "margarine_taste", "hardness",    "crumbleness"};
  if (index < kNames.size()) return std::string(kNames[index]);
  return fmt::format("attr{}", index + 1);
}

namespace {

int round_clamp(double x, int lo, int hi) {
  // std::round is round-half-away-from-zero.
  const double r = std::round(x);
  return static_cast<int>(std::clamp(r, static_cast<double>(lo), static_cast<double>(hi)));
}

std::vector<double> draw_deviations(std::size_t cells, std::uint64_t seed) {
  static constexpr std::array<double, 9> kDeck = {0, 0, 0, 1, 1, 1, 3, 4, 4};
  constexpr double kJitter = 0.25;
  Rng rng(substream_seed(seed, std::string_view("panel")));
  std::vector<double> levels(cells);
  for (std::size_t i = 0; i < cells; ++i) levels[i] = kDeck[i % kDeck.size()];
  rng.shuffle(std::span<double>(levels));
  std::vector<double> d(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double jitter = rng.uniform(-kJitter, kJitter);
    const double magnitude = levels[i] == 0.0 ? std::fabs(jitter) : levels[i] + jitter;
    d[i] = rng.uniform01() < 0.5 ? -magnitude : magnitude;
  }
  return d;
}

struct Scores {
  int liking;
  int jar;
};

Scores draw_cell(Archetype kind, double d, double noise_sd, Rng& rng) {
  if (kind == Archetype::random_responder) {
    const int liking = rng.uniform_int(LikingScore::kMin, LikingScore::kMax);
    const int jar = rng.uniform_int(JarScore::kMin, JarScore::kMax);
    return {liking, jar};
  }
  const double e_jar = rng.normal() * noise_sd;
  const double e_liking = rng.normal() * noise_sd;
  const int jar = round_clamp(d + e_jar, JarScore::kMin, JarScore::kMax);
  int liking = round_clamp(9.0 - 2.0 * std::fabs(d) + e_liking, LikingScore::kMin, LikingScore::kMax);
  if (kind == Archetype::reversed) liking = 10 - liking;
  if (kind == Archetype::scale_confuser) {
    constexpr double kConfuserSpread = 0.5;
    const double e_mid = rng.normal() * kConfuserSpread;
    if (jar == 0) liking = round_clamp(5.0 + e_mid, LikingScore::kMin, LikingScore::kMax);
  }
  return {liking, jar};
}

}  // namespace

Dataset generate(const PanelSpec& spec) {
  validate(spec);
  DatasetHeader header;
  for (std::size_t s = 0; s < spec.samples; ++s) header.samples.push_back(synthetic_sample_name(s));
  for (std::size_t a = 0; a < spec.attributes; ++a) {
    header.attributes.push_back(synthetic_attribute_name(a));
  }
  if (spec.global_liking) header.liking_only_attributes.emplace_back(kGlobalLikingAttribute);

  const auto deviations = draw_deviations(spec.samples * spec.attributes, spec.seed);

  std::vector<Evaluation> evaluations;
  std::vector<LikingOnlyRecord> liking_only;
  std::size_t assessor_number = 0;
  for (const auto& archetype : spec.archetypes) {
    for (std::size_t k = 0; k < archetype.count; ++k) {
      const std::string id = fmt::format("A{:03d}", ++assessor_number);
      header.assessors.push_back(id);
      Rng rng(substream_seed(spec.seed, std::string_view(id)));
      for (std::size_t s = 0; s < spec.samples; ++s) {
        double liking_sum = 0.0;
        for (std::size_t a = 0; a < spec.attributes; ++a) {
          const auto sc = draw_cell(archetype.kind, deviations[s * spec.attributes + a],
                                    archetype.noise_sd, rng);
          liking_sum += sc.liking;
          evaluations.push_back({id, header.samples[s], header.attributes[a],
                                 LikingScore(sc.liking), JarScore(sc.jar)});
        }
        if (!spec.global_liking) continue;
        int global = 0;
        if (archetype.kind == Archetype::random_responder) {
          global = rng.uniform_int(LikingScore::kMin, LikingScore::kMax);
        } else {
          const double mean = liking_sum / static_cast<double>(spec.attributes);
          global = round_clamp(mean + rng.normal() * archetype.noise_sd, LikingScore::kMin,
                               LikingScore::kMax);
        }
        liking_only.push_back({id, header.samples[s], std::string(kGlobalLikingAttribute),
                               LikingScore(global)});
      }
    }
  }
  return Dataset(std::move(header), std::move(evaluations), std::move(liking_only));
}

}  // namespace jarcon
