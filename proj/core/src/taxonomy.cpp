#include "svrkit/taxonomy.hpp"

namespace svr {

namespace {

// Canonical age bin names use an en dash, matching the published class list.
constexpr std::array<std::string_view, 10> kAgeBinNames = {
    "1–7",   "8–12",  "13–17", "18–25", "26–35",
    "36–45", "46–55", "56–65", "66–75", "76+",
};

constexpr std::array<std::string_view, 8> kRegionNames = {
    "North American",
    "European",
    "British/Irish",
    "Latin/Hispanic",
    "Oceanian",
    "East/Southeast Asian",
    "Middle Eastern/North African",
    "African",
};

constexpr std::array<std::string_view, 5> kPitchNames = {
    "very low", "low", "normal", "high", "very high"};
constexpr std::array<std::string_view, 5> kBrightnessNames = {
    "muted", "mellow", "neutral", "bright", "brilliant"};
constexpr std::array<std::string_view, 5> kNoiseNames = {
    "clean", "mild", "moderate", "severe", "extreme"};
constexpr std::array<std::string_view, 5> kReverbNames = {
    "minimal", "slight", "moderate", "heavy", "extreme"};

constexpr std::array<AgeBinBounds, 10> kAgeBinBounds = {{
    {1, 7},
    {8, 12},
    {13, 17},
    {18, 25},
    {26, 35},
    {36, 45},
    {46, 55},
    {56, 65},
    {66, 75},
    {76, std::nullopt},
}};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_from(const std::array<std::string_view, N>& names,
                               std::string_view s) noexcept {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(GenderLabel v) noexcept {
  return v == GenderLabel::male ? "male" : "female";
}
std::string_view to_string(AgeBin v) noexcept { return kAgeBinNames[index_of(v)]; }
std::string_view to_string(RegionClass v) noexcept {
  return kRegionNames[static_cast<int>(v)];
}
std::string_view to_string(PitchClass v) noexcept { return kPitchNames[index_of(v)]; }
std::string_view to_string(BrightnessClass v) noexcept {
  return kBrightnessNames[index_of(v)];
}
std::string_view to_string(NoiseClass v) noexcept {
  return kNoiseNames[static_cast<int>(v)];
}
std::string_view to_string(ReverbClass v) noexcept {
  return kReverbNames[static_cast<int>(v)];
}
std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::same ? "same" : "different";
}
std::string_view to_string(SupportLevel v) noexcept {
  switch (v) {
    case SupportLevel::supportive: return "supportive";
    case SupportLevel::mixed: return "mixed";
    case SupportLevel::conflicting: return "conflicting";
  }
  return "";
}
std::string_view to_string(SeverityLevel v) noexcept {
  switch (v) {
    case SeverityLevel::low: return "low";
    case SeverityLevel::moderate: return "moderate";
    case SeverityLevel::extreme: return "extreme";
  }
  return "";
}
std::string_view to_string(CaseKind v) noexcept {
  switch (v) {
    case CaseKind::aligned: return "aligned";
    case CaseKind::mixed: return "mixed";
    case CaseKind::reversal: return "reversal";
  }
  return "";
}
std::string_view to_string(CorpusKind v) noexcept {
  return v == CorpusKind::voxceleb_like ? "voxceleb-like" : "libritts-like";
}
std::string_view to_string(Attribute v) noexcept {
  switch (v) {
    case Attribute::gender: return "gender";
    case Attribute::age: return "age";
    case Attribute::region: return "region";
    case Attribute::pitch: return "pitch";
    case Attribute::brightness: return "brightness";
  }
  return "";
}

std::optional<GenderLabel> parse_gender(std::string_view s) noexcept {
  if (s == "male") return GenderLabel::male;
  if (s == "female") return GenderLabel::female;
  return std::nullopt;
}

std::optional<AgeBin> parse_age_bin(std::string_view s) noexcept {
  for (int i = 0; i < kAgeBinCount; ++i) {
    if (kAgeBinNames[i] == s) return static_cast<AgeBin>(i);
  }
  // Accept the plain-hyphen spelling as well (e.g. "26-35").
  for (int i = 0; i < kAgeBinCount - 1; ++i) {
    const auto b = kAgeBinBounds[i];
    const std::string plain = std::to_string(b.lower) + "-" + std::to_string(*b.upper);
    if (plain == s) return static_cast<AgeBin>(i);
  }
  return std::nullopt;
}

std::optional<RegionClass> parse_region_class(std::string_view s) noexcept {
  return parse_from<RegionClass>(kRegionNames, s);
}
std::optional<PitchClass> parse_pitch_class(std::string_view s) noexcept {
  return parse_from<PitchClass>(kPitchNames, s);
}
std::optional<BrightnessClass> parse_brightness_class(std::string_view s) noexcept {
  return parse_from<BrightnessClass>(kBrightnessNames, s);
}
std::optional<NoiseClass> parse_noise_class(std::string_view s) noexcept {
  return parse_from<NoiseClass>(kNoiseNames, s);
}
std::optional<ReverbClass> parse_reverb_class(std::string_view s) noexcept {
  return parse_from<ReverbClass>(kReverbNames, s);
}
std::optional<Verdict> parse_verdict_label(std::string_view s) noexcept {
  if (s == "same") return Verdict::same;
  if (s == "different") return Verdict::different;
  return std::nullopt;
}
std::optional<SupportLevel> parse_support_level(std::string_view s) noexcept {
  if (s == "supportive") return SupportLevel::supportive;
  if (s == "mixed") return SupportLevel::mixed;
  if (s == "conflicting") return SupportLevel::conflicting;
  return std::nullopt;
}
std::optional<SeverityLevel> parse_severity_level(std::string_view s) noexcept {
  if (s == "low") return SeverityLevel::low;
  if (s == "moderate") return SeverityLevel::moderate;
  if (s == "extreme") return SeverityLevel::extreme;
  return std::nullopt;
}
std::optional<CaseKind> parse_case_kind(std::string_view s) noexcept {
  if (s == "aligned") return CaseKind::aligned;
  if (s == "mixed") return CaseKind::mixed;
  if (s == "reversal") return CaseKind::reversal;
  return std::nullopt;
}
std::optional<CorpusKind> parse_corpus_kind(std::string_view s) noexcept {
  if (s == "voxceleb-like") return CorpusKind::voxceleb_like;
  if (s == "libritts-like") return CorpusKind::libritts_like;
  return std::nullopt;
}

AgeBinBounds age_bin_bounds(AgeBin b) noexcept { return kAgeBinBounds[index_of(b)]; }

}  // namespace svr
