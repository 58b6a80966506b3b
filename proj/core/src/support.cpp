#include "svrkit/support.hpp"

#include <cmath>

#include "svrkit/error.hpp"

namespace svr {

std::string_view to_string(CompatState s) noexcept {
  switch (s) {
    case CompatState::compatible: return "compatible";
    case CompatState::partial: return "partial";
    case CompatState::conflicting: return "conflicting";
  }
  return "";
}

CompatState ordinal_compat(int bin1, int bin2) noexcept {
  const int gap = std::abs(bin1 - bin2);
  if (gap == 0) return CompatState::compatible;
  if (gap == 1) return CompatState::partial;
  return CompatState::conflicting;
}

int AttributeStates::comparable_count() const noexcept {
  int n = 0;
  for (const auto a : kAllAttributes) {
    if (get(a)) ++n;
  }
  return n;
}

const std::optional<CompatState>& AttributeStates::get(Attribute a) const noexcept {
  switch (a) {
    case Attribute::gender: return gender;
    case Attribute::age: return age;
    case Attribute::region: return region;
    case Attribute::pitch: return pitch;
    case Attribute::brightness: return brightness;
  }
  return gender;
}

std::optional<CompatState>& AttributeStates::get(Attribute a) noexcept {
  return const_cast<std::optional<CompatState>&>(
      static_cast<const AttributeStates&>(*this).get(a));
}

namespace {

constexpr int kGenderMismatchPenalty = 4;
constexpr int kRegionMismatchPenalty = 1;

int gender_state_penalty(CompatState s) noexcept {
  return s == CompatState::compatible ? 0 : kGenderMismatchPenalty;
}

int region_state_penalty(CompatState s) noexcept {
  return s == CompatState::compatible ? 0 : kRegionMismatchPenalty;
}

}  // namespace

int attribute_penalty(Attribute attr, const SpeakerProfile& a, const SpeakerProfile& b) {
  switch (attr) {
    case Attribute::gender:
      if (!a.gender || !b.gender) break;
      return *a.gender == *b.gender ? 0 : kGenderMismatchPenalty;
    case Attribute::age:
      if (!a.age || !b.age) break;
      return state_penalty(ordinal_compat(index_of(*a.age), index_of(*b.age)));
    case Attribute::region:
      if (!a.region || !b.region) break;
      return *a.region == *b.region ? 0 : kRegionMismatchPenalty;
    case Attribute::pitch:
      if (!a.pitch || !b.pitch) break;
      return state_penalty(ordinal_compat(index_of(*a.pitch), index_of(*b.pitch)));
    case Attribute::brightness:
      if (!a.brightness || !b.brightness) break;
      return state_penalty(
          ordinal_compat(index_of(*a.brightness), index_of(*b.brightness)));
  }
  throw Error(ErrorCode::configuration,
              std::string("attribute_penalty on absent attribute ") +
                  std::string(to_string(attr)));
}

int voice_penalty(std::optional<CompatState> pitch,
                  std::optional<CompatState> brightness) noexcept {
  if (!pitch && !brightness) return 0;
  if (pitch && !brightness) return state_penalty(*pitch);
  if (!pitch && brightness) return state_penalty(*brightness);
  const int p1 = state_penalty(*pitch);
  const int p2 = state_penalty(*brightness);
  const int bonus = (p1 > 0 && p2 > 0) ? 1 : 0;
  return std::max(p1, p2) + bonus;
}

AttributeStates derive_states(const SpeakerProfile& a, const SpeakerProfile& b) noexcept {
  AttributeStates s;
  if (a.gender && b.gender) {
    s.gender = *a.gender == *b.gender ? CompatState::compatible : CompatState::conflicting;
  }
  if (a.age && b.age) {
    s.age = ordinal_compat(index_of(*a.age), index_of(*b.age));
  }
  if (a.region && b.region) {
    s.region = *a.region == *b.region ? CompatState::compatible : CompatState::conflicting;
  }
  if (a.pitch && b.pitch) {
    s.pitch = ordinal_compat(index_of(*a.pitch), index_of(*b.pitch));
  }
  if (a.brightness && b.brightness) {
    s.brightness = ordinal_compat(index_of(*a.brightness), index_of(*b.brightness));
  }
  return s;
}

SupportAssessment score_states(const AttributeStates& states) noexcept {
  SupportAssessment out;
  out.states = states;
  out.comparable_count = states.comparable_count();

  int total = 0;
  if (states.gender) total += gender_state_penalty(*states.gender);
  if (states.age) total += state_penalty(*states.age);
  if (states.region) total += region_state_penalty(*states.region);
  out.voice_penalty = voice_penalty(states.pitch, states.brightness);
  total += out.voice_penalty;
  out.total_penalty = total;

  if (out.comparable_count == 0) {
    out.level = SupportLevel::mixed;
  } else if (total <= 1) {
    out.level = SupportLevel::supportive;
  } else if (total <= 3) {
    out.level = SupportLevel::mixed;
  } else {
    out.level = SupportLevel::conflicting;
  }
  return out;
}

SupportAssessment compute_support(const SpeakerProfile& a, const SpeakerProfile& b) noexcept {
  return score_states(derive_states(a, b));
}

}  // namespace svr
