#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "svrkit/evaluate.hpp"
#include "svrkit/manifest.hpp"
#include "svrkit/profile.hpp"

namespace svr {

// Operator-facing jobs behind the CLI subcommands. All jobs are deterministic
// for a fixed (config, seed, inputs) at any worker count: per-utterance and
// per-trial randomness comes from seeds derived from (global seed, id), and
// outputs are merged in id/file order.

struct FitCutoffsReport {
  std::size_t utterances = 0;
  std::size_t read_errors = 0;
  std::size_t f0_failed = 0;
  std::size_t missing_gender = 0;
  std::size_t male_values = 0;
  std::size_t female_values = 0;
  std::size_t brightness_values = 0;
  std::filesystem::path male_file;
  std::filesystem::path female_file;
  std::filesystem::path brightness_file;
  std::filesystem::path report_file;
};

/// Extracts descriptors over the corpus, fits per-gender pitch cutoffs and
/// pooled brightness cutoffs, and writes versioned cutoff files plus an
/// extraction-failure report. Fewer than 10 usable values in a group raises
/// ErrorCode::insufficient_data.
FitCutoffsReport cmd_fit_cutoffs(const RunConfig& cfg);

struct BuildReport {
  std::size_t utterances = 0;
  std::size_t read_errors = 0;
  std::size_t metadata_rows_skipped = 0;
  std::size_t f0_failed = 0;
  std::size_t clip_warnings = 0;
  std::size_t trials = 0;
  std::size_t trials_skipped = 0;   // unresolvable utterance references
  std::size_t svr_ineligible = 0;   // pair lacks a full five-attribute profile
  std::map<std::string, std::size_t> instances_by_task;
  CoverageStats coverage;
  std::filesystem::path instances_file;
  std::filesystem::path utterances_file;
  std::filesystem::path report_file;
};

/// Builds the supervision dataset: samples augmentation per utterance,
/// computes labels, renders targets for the configured task mix, and writes
/// line-delimited JSON manifests (plus augmented WAVs when configured).
BuildReport cmd_build_dataset(const RunConfig& cfg);

enum class ScoreMode : std::uint8_t { sv, svr };

struct ScoreOptions {
  ScoreMode mode = ScoreMode::sv;
  std::filesystem::path predictions;  // JSONL {trial_id, generated_text}
  std::filesystem::path references;   // instances manifest from build-dataset
  std::filesystem::path report_out;   // optional JSON report path
  std::filesystem::path details_out;  // optional per-trial JSONL path
};

struct ScoreReport {
  ScoreMode mode = ScoreMode::sv;
  std::size_t reference_count = 0;
  std::size_t prediction_count = 0;
  std::size_t scored = 0;
  std::size_t unmatched_references = 0;
  std::size_t unmatched_predictions = 0;
  std::vector<std::string> unmatched_ids;
  std::size_t parse_failures = 0;
  DiagnosticsReport diagnostics;
  // SV-R only: schema and grounding metrics.
  std::size_t format_valid = 0;
  double format_valid_rate = 0.0;
  double attribute_grounding_micro = 0.0;  // per-clause average
  double attribute_grounding_macro = 0.0;  // per-trial average
  double support_grounding_rate = 0.0;
};

/// Joins predictions to references on trial_id, parses generated answers per
/// mode, and aggregates the diagnostics report. Unmatched ids on either side
/// are listed and excluded with a warning count.
ScoreReport cmd_score(const ScoreOptions& opts);

/// Re-aggregates a per-trial details file written by cmd_score.
DiagnosticsReport cmd_diagnose(const std::filesystem::path& details_file);

std::string render_diagnostics_table(const DiagnosticsReport& r);
std::string render_score_table(const ScoreReport& r);

}  // namespace svr
