#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace svr {

// Closed attribute class system. Every enum here is a fixed taxonomy; ordinal
// enums expose their rank through an index helper so that binning, penalty and
// severity logic never depend on enum declaration tricks.

enum class GenderLabel : std::uint8_t { male, female };

enum class AgeBin : std::uint8_t {
  y1_7,
  y8_12,
  y13_17,
  y18_25,
  y26_35,
  y36_45,
  y46_55,
  y56_65,
  y66_75,
  y76_plus,
};
inline constexpr int kAgeBinCount = 10;

enum class RegionClass : std::uint8_t {
  north_american,
  european,
  british_irish,
  latin_hispanic,
  oceanian,
  east_southeast_asian,
  middle_eastern_north_african,
  african,
};
inline constexpr int kRegionClassCount = 8;

enum class PitchClass : std::uint8_t { very_low, low, normal, high, very_high };

// Ordered muted < mellow < neutral < bright < brilliant.
enum class BrightnessClass : std::uint8_t { muted, mellow, neutral, bright, brilliant };

enum class NoiseClass : std::uint8_t { clean, mild, moderate, severe, extreme };
enum class ReverbClass : std::uint8_t { minimal, slight, moderate, heavy, extreme };

enum class Verdict : std::uint8_t { same, different };
enum class SupportLevel : std::uint8_t { supportive, mixed, conflicting };
enum class SeverityLevel : std::uint8_t { low, moderate, extreme };
enum class CaseKind : std::uint8_t { aligned, mixed, reversal };
enum class CorpusKind : std::uint8_t { voxceleb_like, libritts_like };
enum class Attribute : std::uint8_t { gender, age, region, pitch, brightness };

inline constexpr std::array<Attribute, 5> kAllAttributes = {
    Attribute::gender, Attribute::age, Attribute::region, Attribute::pitch,
    Attribute::brightness};

constexpr int index_of(AgeBin b) noexcept { return static_cast<int>(b); }
constexpr int index_of(PitchClass p) noexcept { return static_cast<int>(p); }
constexpr int index_of(BrightnessClass b) noexcept { return static_cast<int>(b); }

std::string_view to_string(GenderLabel v) noexcept;
std::string_view to_string(AgeBin v) noexcept;
std::string_view to_string(RegionClass v) noexcept;
std::string_view to_string(PitchClass v) noexcept;
std::string_view to_string(BrightnessClass v) noexcept;
std::string_view to_string(NoiseClass v) noexcept;
std::string_view to_string(ReverbClass v) noexcept;
std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(SupportLevel v) noexcept;
std::string_view to_string(SeverityLevel v) noexcept;
std::string_view to_string(CaseKind v) noexcept;
std::string_view to_string(CorpusKind v) noexcept;
std::string_view to_string(Attribute v) noexcept;

std::optional<GenderLabel> parse_gender(std::string_view s) noexcept;
std::optional<AgeBin> parse_age_bin(std::string_view s) noexcept;
std::optional<RegionClass> parse_region_class(std::string_view s) noexcept;
std::optional<PitchClass> parse_pitch_class(std::string_view s) noexcept;
std::optional<BrightnessClass> parse_brightness_class(std::string_view s) noexcept;
std::optional<NoiseClass> parse_noise_class(std::string_view s) noexcept;
std::optional<ReverbClass> parse_reverb_class(std::string_view s) noexcept;
std::optional<Verdict> parse_verdict_label(std::string_view s) noexcept;
std::optional<SupportLevel> parse_support_level(std::string_view s) noexcept;
std::optional<SeverityLevel> parse_severity_level(std::string_view s) noexcept;
std::optional<CaseKind> parse_case_kind(std::string_view s) noexcept;
std::optional<CorpusKind> parse_corpus_kind(std::string_view s) noexcept;

/// Inclusive bounds of an age bin; the upper bound is absent for the open
/// 76+ bin.
struct AgeBinBounds {
  int lower = 0;
  std::optional<int> upper;
};
AgeBinBounds age_bin_bounds(AgeBin b) noexcept;

}  // namespace svr
