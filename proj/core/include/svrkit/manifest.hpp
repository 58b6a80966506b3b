#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svrkit/environment.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

/// One line of a trial list: an utterance pair and its ground-truth label.
struct TrialSpec {
  std::string trial_id;
  std::string utt1;
  std::string utt2;
  Verdict gt_label = Verdict::same;
};

/// Reads a whitespace-separated trial list. Lines are either
/// `<label> <utt1> <utt2>` (auto trial ids t000001, ...) or
/// `<trial_id> <label> <utt1> <utt2>`; the label is 1/0 or same/different.
std::vector<TrialSpec> load_trial_list(const std::filesystem::path& path);

enum class TargetFormOption : std::uint8_t { short_form, sentence };

/// Job configuration, parsed from a `key = value` text file ('#' comments).
struct RunConfig {
  std::uint64_t seed = 0;
  CorpusKind corpus_kind = CorpusKind::voxceleb_like;
  std::filesystem::path audio_root;
  std::filesystem::path metadata_manifest;
  std::filesystem::path noise_bank;
  std::filesystem::path rir_bank;
  std::filesystem::path output_dir;
  std::filesystem::path trial_list;        // optional; required for pair tasks
  std::filesystem::path cutoffs_dir;       // where fit-cutoffs wrote its files
  std::filesystem::path region_map;        // optional override of the builtin
  std::filesystem::path prompt_templates;  // optional override of the builtin
  CropMode crop_mode = CropMode::train;
  TargetFormOption target_form = TargetFormOption::sentence;
  bool closed_options = false;
  bool write_audio = false;
  int workers = 1;
  std::vector<std::string> tasks;            // empty = all tasks
  std::map<std::string, double> task_weights;  // inclusion probability per task
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Prompt-side question text per task, shipped as builtin versioned defaults
/// with an optional file override (TSV: task<TAB>question).
class PromptTemplates {
 public:
  static const PromptTemplates& builtin();
  static PromptTemplates load(const std::filesystem::path& path);

  /// Question text for a task name; optionally with the closed answer options
  /// appended.
  std::string get(const std::string& task, bool closed_options) const;

  std::string_view version() const noexcept { return version_; }
  std::size_t size() const noexcept { return questions_.size(); }

 private:
  std::map<std::string, std::string> questions_;
  std::string version_;
};

/// The canonical task-name inventory, in emission order.
const std::vector<std::string>& single_utterance_tasks();
const std::vector<std::string>& pair_tasks();

/// Option list appended to prompts in closed-option mode ("Answer with one
/// of: ..."); noise/reverb options carry their interval definitions.
std::string closed_option_suffix(const std::string& task);

}  // namespace svr
