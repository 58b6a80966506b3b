#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svrkit/taxonomy.hpp"

namespace svr {

/// Partially-populated per-utterance attribute record. Absent fields are
/// represented explicitly and never imputed.
struct SpeakerProfile {
  std::string utterance_id;
  std::optional<GenderLabel> gender;
  std::optional<AgeBin> age;
  std::optional<RegionClass> region;
  std::optional<PitchClass> pitch;
  std::optional<BrightnessClass> brightness;

  bool complete() const noexcept {
    return gender && age && region && pitch && brightness;
  }
};

/// Maps an age in years to its bin. Ages below 1 are rejected
/// (ErrorCode::invalid_age) rather than clamped.
AgeBin bin_age(int age_years);

/// Nationality -> regional/linguistic background lookup. Matching is
/// case-insensitive after trimming; no fuzzy matching. Unknown nationalities
/// raise ErrorCode::unmapped_nationality carrying the input string.
///
/// The shipped table is a best-effort reconstruction over common VoxCeleb
/// nationalities; the 8 target classes are fixed while the country list stays
/// editable through load().
class RegionMapper {
 public:
  static const RegionMapper& builtin();

  /// Loads a key -> class text file, one `nationality<TAB>class` pair per
  /// line; '#' starts a comment.
  static RegionMapper load(const std::filesystem::path& path);

  RegionClass map(std::string_view nationality) const;
  std::optional<RegionClass> try_map(std::string_view nationality) const;

  std::string_view version() const noexcept { return version_; }
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, RegionClass> table_;  // keys normalized lower-case
  std::string version_;
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct CoverageStats {
  std::size_t total_rows = 0;
  std::size_t loaded = 0;
  std::size_t skipped = 0;
  std::size_t with_gender = 0;
  std::size_t with_age = 0;
  std::size_t with_region = 0;
};

struct MetadataLoadResult {
  std::map<std::string, SpeakerProfile> profiles;
  std::vector<RowError> row_errors;
  CoverageStats coverage;
};

/// Reads a metadata manifest. Two formats are accepted:
///  - delimited text (tab or comma) with a header row naming any of
///    {utterance_id, gender, age_years, nationality}; empty cells mean absent
///  - line-delimited JSON with the same field names
/// Duplicate utterance ids raise ErrorCode::duplicate_key; malformed rows are
/// skipped, counted, and reported with their line number.
MetadataLoadResult load_speaker_metadata(const std::filesystem::path& path,
                                         const RegionMapper& regions = RegionMapper::builtin());

MetadataLoadResult parse_speaker_metadata(std::istream& in, const RegionMapper& regions);

}  // namespace svr
