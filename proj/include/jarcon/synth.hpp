#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jarcon/core_model.hpp"

namespace jarcon {

enum class Archetype {
  ideal_point,       // liking falls with distance from the ideal intensity
  random_responder,  // both scores uniform on their scales
  scale_confuser,    // JAR like ideal_point, liking parked near 5 when JAR = 0
  reversed,          // ideal_point with the liking scale flipped (x -> 10 - x)
};

std::string_view to_string(Archetype kind) noexcept;
/// Accepts "ideal_point"/"ideal", "random_responder"/"random",
/// "scale_confuser"/"confuser", "reversed". Throws Error(validation).
Archetype parse_archetype(std::string_view name);

struct ArchetypeSpec {
  static constexpr double kDefaultNoiseSd = 0.75;

  Archetype kind = Archetype::ideal_point;
  double noise_sd = kDefaultNoiseSd;
  std::size_t count = 0;
};

/// Parses "kind:count" or "kind:count:noise_sd". Throws Error(validation).
ArchetypeSpec parse_archetype_spec(std::string_view text);

struct PanelSpec {
  std::vector<ArchetypeSpec> archetypes;
  std::size_t samples = 10;
  std::size_t attributes = 9;
  std::uint64_t seed = 0;
  /// Also emit a liking-only "global_liking" record per (assessor, sample).
  bool global_liking = true;
};

/// Throws Error(validation) for an empty panel, zero samples or attributes,
/// or a negative noise level.
void validate(const PanelSpec& spec);

/// Deterministic in spec.seed. Assessors are numbered A001, A002, ... in
/// archetype order; each draws from its own substream, so the output does
/// not depend on generation order.
///
/// Ideal-point model: the panel shares one latent deviation d per (sample,
/// attribute). |d| comes from a balanced deck of levels {0, 1, 3, 4} with
/// weights 3:3:1:2 plus a uniform jitter of +/-0.25 (level 0 draws |d| in
/// [0, 0.25)); the sign of d is a fair coin. Each assessor then reports
///   JAR    = clamp(round(d + e1), -2, 2)
///   liking = clamp(round(9 - 2|d| + e2), 1, 9)
/// with e1, e2 ~ N(0, noise_sd) and round-half-away-from-zero. The deck keeps
/// the three |JAR| levels equally frequent at zero noise, which is what lets
/// tau_c reach -1.
Dataset generate(const PanelSpec& spec);

/// Names used for generated samples and attributes.
std::string synthetic_sample_name(std::size_t index);
std::string synthetic_attribute_name(std::size_t index);
inline constexpr std::string_view kGlobalLikingAttribute = "global_liking";

}  // namespace jarcon
