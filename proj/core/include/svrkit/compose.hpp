#pragma once

#include <optional>
#include <string>

#include "svrkit/environment.hpp"
#include "svrkit/support.hpp"
#include "svrkit/taxonomy.hpp"
#include "svrkit/trial.hpp"

namespace svr {

// Supervision-text rendering. Every template here is a fixed byte-exact
// contract: tests pin the worked-example outputs, and the trace parsers in
// evaluate.hpp invert these strings.

enum class Scenario : std::uint8_t {
  gender,
  age,
  region,
  voice,
  full_profile,
  noise,
  reverb,
  acoustic_profile,
  sv,
  noise_comparison,
  reverb_comparison,
};

enum class TargetForm : std::uint8_t { short_form, sentence };
enum class ComparisonOutcome : std::uint8_t { first, second, similar };

std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view s) noexcept;

/// Label slots available when rendering a scenario; a scenario whose required
/// slot is absent raises ErrorCode::missing_slot naming the slot.
struct Stage1Labels {
  std::optional<GenderLabel> gender;
  std::optional<AgeBin> age;
  std::optional<RegionClass> region;
  std::optional<PitchClass> pitch;
  std::optional<BrightnessClass> brightness;
  std::optional<NoiseClass> noise;
  std::optional<ReverbClass> reverb;
  std::optional<Verdict> verdict;
  std::optional<ComparisonOutcome> comparison;
};

/// "in the {lo}–{hi} range" (open bin: "in the 76+ range").
std::string age_phrase(AgeBin bin);

std::string render_stage1(Scenario scenario, const Stage1Labels& labels, TargetForm form);

/// Single-sentence comparison clause for one attribute and state (gender and
/// region render mismatch as "different"). Voice sub-attributes render their
/// own pitch/brightness sentences.
std::string render_compat_clause(Attribute attr, CompatState state);

/// Pitch clause, brightness clause and (optionally) the vocal-characteristics
/// summary sentence for the grouped voice attribute.
std::string render_voice_clauses(std::optional<CompatState> pitch,
                                 std::optional<CompatState> brightness,
                                 bool include_summary);

/// Compatibility-QA answer: available atomic clauses, optionally followed by
/// the overall profile summary sentence.
std::string render_compat_qa(const SupportAssessment& support, bool holistic);

/// Two sentences naming each recording's noise and reverberation classes;
/// the clean noise class renders as "no background" here only.
std::string render_environment_status(const EnvironmentLabels& env1,
                                      const EnvironmentLabels& env2);

struct DecisionInputs {
  PairSeverity severity;
  SupportLevel support = SupportLevel::mixed;
  Verdict gt_label = Verdict::same;
};

/// Environment clause (by severity) + profile summary + connector + verdict
/// per the six-cell support x label composition matrix.
std::string compose_decision(const DecisionInputs& inputs);

/// reversal <=> (supportive, different) or (conflicting, same); aligned <=>
/// (supportive, same) or (conflicting, different); both mixed cells report
/// mixed.
CaseKind classify_case(SupportLevel support, Verdict gt_label) noexcept;

struct SvrTarget {
  std::string environment_status;
  std::string profile_compatibility;
  std::string decision;
  CaseKind case_kind = CaseKind::aligned;

  /// The three labeled blocks separated by blank lines, trailing newline.
  std::string text() const;
};

/// Three-block verification-reasoning target. Requires both profiles to
/// carry all five attributes (ErrorCode::ineligible_trial otherwise); uses
/// the trial's cached support/severity when present.
SvrTarget render_svr_target(const TrialRecord& trial);

}  // namespace svr
