#pragma once

#include <optional>
#include <string_view>

#include "svrkit/profile.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

/// Per-attribute comparison outcome. Ordinal attributes use all three states;
/// binary attributes (gender, region) use compatible vs a conflicting-like
/// mismatch that carries its own attribute-specific penalty.
enum class CompatState : std::uint8_t { compatible, partial, conflicting };

std::string_view to_string(CompatState s) noexcept;

/// Sub-attribute penalty p in {0, 1, 2} for an ordinal state.
constexpr int state_penalty(CompatState s) noexcept { return static_cast<int>(s); }

/// Ordinal bin-distance rule: identical bins are compatible, adjacent bins
/// partial, a gap of two or more conflicting.
CompatState ordinal_compat(int bin1, int bin2) noexcept;

/// Compatibility states for the attributes comparable in a pair (present for
/// both utterances); absent entries contribute nothing downstream.
struct AttributeStates {
  std::optional<CompatState> gender;
  std::optional<CompatState> age;
  std::optional<CompatState> region;
  std::optional<CompatState> pitch;
  std::optional<CompatState> brightness;

  int comparable_count() const noexcept;
  const std::optional<CompatState>& get(Attribute a) const noexcept;
  std::optional<CompatState>& get(Attribute a) noexcept;
};

/// Penalty for one attribute of a pair: gender mismatch 4, region mismatch 1,
/// ordinal attributes their sub-penalty p. Both values must be present
/// (ErrorCode::configuration otherwise).
int attribute_penalty(Attribute attr, const SpeakerProfile& a, const SpeakerProfile& b);

/// Grouped voice factor over the pitch/brightness sub-penalties:
/// max(p_pitch, p_bright), plus 1 when both are non-compatible. With only one
/// sub-attribute comparable its p stands alone; with neither, 0.
int voice_penalty(std::optional<CompatState> pitch, std::optional<CompatState> brightness) noexcept;

struct SupportAssessment {
  AttributeStates states;
  int voice_penalty = 0;
  int total_penalty = 0;
  int comparable_count = 0;
  SupportLevel level = SupportLevel::mixed;
};

AttributeStates derive_states(const SpeakerProfile& a, const SpeakerProfile& b) noexcept;

/// Scores a set of attribute states: gender/age/region penalties plus the
/// grouped voice penalty, then the three-way level (supportive <= 1,
/// mixed 2-3 or no comparable fields, conflicting >= 4).
SupportAssessment score_states(const AttributeStates& states) noexcept;

SupportAssessment compute_support(const SpeakerProfile& a, const SpeakerProfile& b) noexcept;

}  // namespace svr
