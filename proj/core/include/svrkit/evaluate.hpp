#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svrkit/support.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

/// Outcome of a deterministic closed-label parse. A failed parse always
/// scores as incorrect.
struct ParseOutcome {
  std::optional<std::string> label;
  bool failed = true;
  std::optional<std::string> matched_span;
};

/// A closed class inventory for answer parsing. Aliases map onto the
/// canonical label.
struct TaxonomyClass {
  std::string canonical;
  std::vector<std::string> aliases;
};

struct Taxonomy {
  std::string name;
  std::vector<TaxonomyClass> classes;
};

enum class TaxonomyKind : std::uint8_t {
  gender,
  age,
  region,
  pitch,
  brightness,
  noise,
  reverb,
  verdict,
  comparison,
};

const Taxonomy& taxonomy(TaxonomyKind kind);

/// Case-insensitive whole-word search for exactly one class of the taxonomy.
/// A matched span contained inside a longer match of another class does not
/// count (so "very low" does not also register "low"). Zero or two or more
/// distinct classes fail the parse.
ParseOutcome parse_closed_answer(std::string_view text, const Taxonomy& taxonomy);

/// same vs different over whole words; both or neither present fails.
ParseOutcome parse_verdict(std::string_view text);

enum class Connector : std::uint8_t { likewise, however, none };
std::string_view to_string(Connector c) noexcept;

/// Parsed form of a three-block verification-reasoning trace. A malformed
/// trace (missing or out-of-order headers, or an empty body) yields
/// format_valid=false with every field absent.
struct ParsedTrace {
  bool format_valid = false;
  std::optional<std::pair<NoiseClass, ReverbClass>> env1;
  std::optional<std::pair<NoiseClass, ReverbClass>> env2;
  AttributeStates clauses;
  std::optional<Connector> connector;
  std::optional<Verdict> verdict;
  std::optional<SupportLevel> derived_support;
};

ParsedTrace parse_svr_trace(std::string_view text);

/// Fraction of reference-comparable attributes whose parsed clause state
/// equals the reference state; a missing clause counts as wrong and an
/// invalid format scores 0.
double attribute_grounding(const ParsedTrace& parsed, const SupportAssessment& reference);

/// Whether the support level recomputed from the parsed clauses matches the
/// reference level.
bool support_grounding(const ParsedTrace& parsed, const SupportAssessment& reference);

struct ScoredTrial {
  Verdict gt_label = Verdict::same;
  SupportLevel support_level = SupportLevel::mixed;
  std::optional<Verdict> predicted;  // absent = parse failure = incorrect
};

struct CellStats {
  std::size_t count = 0;
  std::size_t correct = 0;
  double accuracy() const noexcept {
    return count == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(count);
  }
};

/// Accuracy partitioned by ground-truth label, by profile-support split
/// (aligned / mixed / reversal) and over the two hardest reversal subsets.
struct DiagnosticsReport {
  std::size_t total = 0;
  CellStats overall;
  CellStats gt_different;
  CellStats gt_same;
  CellStats aligned;
  CellStats mixed;
  CellStats reversal;
  CellStats supportive_to_different;
  CellStats conflicting_to_same;
  // Raw (support level x gt label) cell counts; they sum to total.
  std::array<std::array<std::size_t, 2>, 3> cell_counts{};
};

/// Throws ErrorCode::empty_input on an empty trial list.
DiagnosticsReport subset_diagnostics(std::span<const ScoredTrial> trials);

/// correct / total with failed parses counted incorrect.
double accuracy(std::span<const std::optional<Verdict>> predictions,
                std::span<const Verdict> labels);
double accuracy(std::span<const ParseOutcome> predictions,
                std::span<const std::string> labels);

}  // namespace svr
