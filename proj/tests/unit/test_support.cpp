#include <doctest.h>

#include <optional>

#include "svrkit/error.hpp"
#include "svrkit/support.hpp"

using namespace svr;

namespace {

SpeakerProfile full_profile(GenderLabel g, int age_idx, RegionClass region, int pitch_idx,
                            int bright_idx) {
  SpeakerProfile p;
  p.gender = g;
  p.age = static_cast<AgeBin>(age_idx);
  p.region = region;
  p.pitch = static_cast<PitchClass>(pitch_idx);
  p.brightness = static_cast<BrightnessClass>(bright_idx);
  return p;
}

/// Straight-line restatement of the penalty table, written independently of
/// the implementation: per-attribute penalties over comparable attributes,
/// a max-plus-bonus voice group, and fixed level thresholds.
struct OracleResult {
  int total = 0;
  int comparable = 0;
  SupportLevel level = SupportLevel::mixed;
};

OracleResult oracle_score(std::optional<bool> gender_match, std::optional<int> age_gap,
                          std::optional<bool> region_match, std::optional<int> pitch_p,
                          std::optional<int> bright_p) {
  OracleResult r;
  if (gender_match) {
    ++r.comparable;
    if (!*gender_match) r.total += 4;
  }
  if (age_gap) {
    ++r.comparable;
    if (*age_gap == 1) r.total += 1;
    if (*age_gap >= 2) r.total += 2;
  }
  if (region_match) {
    ++r.comparable;
    if (!*region_match) r.total += 1;
  }
  if (pitch_p) ++r.comparable;
  if (bright_p) ++r.comparable;
  if (pitch_p && bright_p) {
    int v = *pitch_p > *bright_p ? *pitch_p : *bright_p;
    if (*pitch_p > 0 && *bright_p > 0) v += 1;
    r.total += v;
  } else if (pitch_p) {
    r.total += *pitch_p;
  } else if (bright_p) {
    r.total += *bright_p;
  }

  if (r.comparable == 0) {
    r.level = SupportLevel::mixed;
  } else if (r.total <= 1) {
    r.level = SupportLevel::supportive;
  } else if (r.total <= 3) {
    r.level = SupportLevel::mixed;
  } else {
    r.level = SupportLevel::conflicting;
  }
  return r;
}

}  // namespace

TEST_CASE("ordinal compatibility by bin distance") {
  CHECK(ordinal_compat(3, 3) == CompatState::compatible);
  CHECK(ordinal_compat(3, 4) == CompatState::partial);
  CHECK(ordinal_compat(4, 3) == CompatState::partial);
  CHECK(ordinal_compat(1, 4) == CompatState::conflicting);
  CHECK(ordinal_compat(0, 9) == CompatState::conflicting);
}

TEST_CASE("attribute penalties match the table") {
  const auto a = full_profile(GenderLabel::male, 4, RegionClass::european, 2, 2);
  auto b = a;
  b.gender = GenderLabel::female;
  CHECK(attribute_penalty(Attribute::gender, a, b) == 4);
  b.gender = GenderLabel::male;
  CHECK(attribute_penalty(Attribute::gender, a, b) == 0);

  b.region = RegionClass::african;
  CHECK(attribute_penalty(Attribute::region, a, b) == 1);

  b.age = AgeBin::y36_45;  // adjacent to 26-35
  CHECK(attribute_penalty(Attribute::age, a, b) == 1);

  SpeakerProfile empty;
  CHECK_THROWS_AS(attribute_penalty(Attribute::gender, a, empty), Error);
}

TEST_CASE("voice penalty grouping") {
  CHECK(voice_penalty(CompatState::compatible, CompatState::compatible) == 0);
  CHECK(voice_penalty(CompatState::partial, CompatState::compatible) == 1);
  CHECK(voice_penalty(CompatState::compatible, CompatState::partial) == 1);
  CHECK(voice_penalty(CompatState::conflicting, CompatState::partial) == 3);
  CHECK(voice_penalty(CompatState::conflicting, CompatState::conflicting) == 3);
  CHECK(voice_penalty(CompatState::partial, CompatState::partial) == 2);
  // One comparable sub-attribute stands alone, with no bonus.
  CHECK(voice_penalty(CompatState::conflicting, std::nullopt) == 2);
  CHECK(voice_penalty(std::nullopt, CompatState::partial) == 1);
  CHECK(voice_penalty(std::nullopt, std::nullopt) == 0);
}

TEST_CASE("published support examples") {
  const auto base = full_profile(GenderLabel::female, 4, RegionClass::european, 2, 2);

  SUBCASE("identical profiles are supportive at zero") {
    const auto s = compute_support(base, base);
    CHECK(s.total_penalty == 0);
    CHECK(s.level == SupportLevel::supportive);
    CHECK(s.comparable_count == 5);
  }

  SUBCASE("one partial pitch stays supportive at one") {
    auto other = base;
    other.pitch = PitchClass::high;
    const auto s = compute_support(base, other);
    CHECK(s.total_penalty == 1);
    CHECK(s.level == SupportLevel::supportive);
  }

  SUBCASE("conflicting age and voice cross into conflicting") {
    auto other = base;
    other.age = AgeBin::y56_65;                 // +2
    other.pitch = PitchClass::very_low;         // p=2
    other.brightness = BrightnessClass::bright; // p=1 -> voice max+1 = 3
    const auto s = compute_support(base, other);
    CHECK(s.voice_penalty == 3);
    CHECK(s.total_penalty == 5);
    CHECK(s.level == SupportLevel::conflicting);
  }

  SUBCASE("no comparable fields is mixed") {
    SpeakerProfile empty1, empty2;
    const auto s = compute_support(empty1, empty2);
    CHECK(s.comparable_count == 0);
    CHECK(s.level == SupportLevel::mixed);
  }

  SUBCASE("gender mismatch alone forces conflicting") {
    SpeakerProfile a, b;
    a.gender = GenderLabel::male;
    b.gender = GenderLabel::female;
    const auto s = compute_support(a, b);
    CHECK(s.total_penalty == 4);
    CHECK(s.level == SupportLevel::conflicting);
  }
}

TEST_CASE("exhaustive agreement with the brute-force oracle") {
  // All state x presence combinations: gender match/mismatch, age gap 0..9,
  // region match/mismatch, pitch p 0..2, brightness p 0..2, and the 32
  // presence masks. 11520 cases.
  std::size_t cases = 0;
  for (int gender_match = 0; gender_match < 2; ++gender_match) {
    for (int age_gap = 0; age_gap < 10; ++age_gap) {
      for (int region_match = 0; region_match < 2; ++region_match) {
        for (int pitch_p = 0; pitch_p < 3; ++pitch_p) {
          for (int bright_p = 0; bright_p < 3; ++bright_p) {
            for (int mask = 0; mask < 32; ++mask) {
              const bool has_gender = mask & 1;
              const bool has_age = mask & 2;
              const bool has_region = mask & 4;
              const bool has_pitch = mask & 8;
              const bool has_bright = mask & 16;

              SpeakerProfile a, b;
              if (has_gender) {
                a.gender = GenderLabel::male;
                b.gender = gender_match ? GenderLabel::male : GenderLabel::female;
              }
              if (has_age) {
                a.age = static_cast<AgeBin>(0);
                b.age = static_cast<AgeBin>(age_gap);
              }
              if (has_region) {
                a.region = RegionClass::european;
                b.region = region_match ? RegionClass::european : RegionClass::african;
              }
              if (has_pitch) {
                a.pitch = static_cast<PitchClass>(0);
                b.pitch = static_cast<PitchClass>(pitch_p);  // p equals distance here
              }
              if (has_bright) {
                a.brightness = static_cast<BrightnessClass>(0);
                b.brightness = static_cast<BrightnessClass>(bright_p);
              }

              const auto got = compute_support(a, b);
              const auto want = oracle_score(
                  has_gender ? std::optional<bool>(gender_match != 0) : std::nullopt,
                  has_age ? std::optional<int>(age_gap) : std::nullopt,
                  has_region ? std::optional<bool>(region_match != 0) : std::nullopt,
                  has_pitch ? std::optional<int>(pitch_p) : std::nullopt,
                  has_bright ? std::optional<int>(bright_p) : std::nullopt);

              REQUIRE(got.total_penalty == want.total);
              REQUIRE(got.comparable_count == want.comparable);
              REQUIRE(got.level == want.level);

              // Symmetry in total, level and per-attribute states.
              const auto flipped = compute_support(b, a);
              REQUIRE(flipped.total_penalty == got.total_penalty);
              REQUIRE(flipped.level == got.level);
              for (const auto attr : kAllAttributes) {
                REQUIRE(flipped.states.get(attr) == got.states.get(attr));
              }
              ++cases;
            }
          }
        }
      }
    }
  }
  CHECK(cases == 11520);
}

TEST_CASE("worsening one attribute never lowers the total") {
  const auto base = full_profile(GenderLabel::male, 4, RegionClass::european, 2, 2);
  for (const auto attr : kAllAttributes) {
    int prev_total = -1;
    for (int step = 0; step < 3; ++step) {
      auto other = base;
      switch (attr) {
        case Attribute::gender:
          if (step == 1) continue;  // binary: no partial state
          other.gender = step == 0 ? GenderLabel::male : GenderLabel::female;
          break;
        case Attribute::age:
          other.age = static_cast<AgeBin>(4 + step);
          break;
        case Attribute::region:
          if (step == 1) continue;
          other.region = step == 0 ? RegionClass::european : RegionClass::african;
          break;
        case Attribute::pitch:
          other.pitch = static_cast<PitchClass>(2 + step);
          break;
        case Attribute::brightness:
          other.brightness = static_cast<BrightnessClass>(2 + step);
          break;
      }
      const int total = compute_support(base, other).total_penalty;
      CHECK(total >= prev_total);
      prev_total = total;
    }
  }
}
