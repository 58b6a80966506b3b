#include "svrkit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "svrkit/compose.hpp"
#include "svrkit/descriptors.hpp"
#include "svrkit/environment.hpp"
#include "svrkit/error.hpp"
#include "svrkit/rng.hpp"
#include "svrkit/trial.hpp"

namespace svr {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;
constexpr const char* kMaleCutoffsFile = "cutoffs_pitch_male.txt";
constexpr const char* kFemaleCutoffsFile = "cutoffs_pitch_female.txt";
constexpr const char* kBrightnessCutoffsFile = "cutoffs_brightness.txt";

fs::path audio_path(const fs::path& root, const std::string& utterance_id) {
  if (utterance_id.size() > 4 &&
      utterance_id.compare(utterance_id.size() - 4, 4, ".wav") == 0) {
    return root / utterance_id;
  }
  return root / (utterance_id + ".wav");
}

void require_path(const fs::path& p, const char* what) {
  if (p.empty()) {
    throw Error(ErrorCode::configuration, std::string("config is missing ") + what);
  }
  if (!fs::exists(p)) {
    throw Error(ErrorCode::configuration,
                std::string(what) + " does not exist: " + p.string());
  }
}

/// Runs fn(0..n) on `workers` threads; each call must write only to its own
/// output slot.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

void write_text_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path.string());
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

struct UtteranceContext {
  std::string id;
  bool ok = false;
  std::string error;
  SpeakerProfile profile;
  DescriptorResult descriptors;
  AugmentationPlan plan;
  EnvironmentLabels env;
  std::size_t crop_start = 0;
  std::size_t crop_length = 0;
  bool short_crop = false;
  std::size_t clipped_samples = 0;
  bool clip_warning = false;
  Waveform audio;  // populated only when audio output is requested
};

struct Cutoffs {
  GenderCutoffs pitch;
  std::optional<PercentileCutoffs> brightness;
};

Cutoffs load_cutoffs_dir(const fs::path& dir) {
  Cutoffs c;
  const auto maybe = [&](const char* name) -> std::optional<PercentileCutoffs> {
    const fs::path p = dir / name;
    if (!fs::exists(p)) return std::nullopt;
    return read_cutoffs_file(p).cutoffs;
  };
  c.pitch.male = maybe(kMaleCutoffsFile);
  c.pitch.female = maybe(kFemaleCutoffsFile);
  c.brightness = maybe(kBrightnessCutoffsFile);
  return c;
}

double task_weight(const RunConfig& cfg, const std::string& task) {
  const auto it = cfg.task_weights.find(task);
  return it == cfg.task_weights.end() ? 1.0 : it->second;
}

bool task_enabled(const RunConfig& cfg, const std::string& task) {
  if (cfg.tasks.empty()) return true;
  return std::find(cfg.tasks.begin(), cfg.tasks.end(), task) != cfg.tasks.end();
}

json profile_json(const SpeakerProfile& p) {
  json j = json::object();
  if (p.gender) j["gender"] = to_string(*p.gender);
  if (p.age) j["age"] = to_string(*p.age);
  if (p.region) j["region"] = to_string(*p.region);
  if (p.pitch) j["pitch"] = to_string(*p.pitch);
  if (p.brightness) j["brightness"] = to_string(*p.brightness);
  return j;
}

json states_json(const AttributeStates& st) {
  json j = json::object();
  for (const auto attr : kAllAttributes) {
    if (st.get(attr)) j[std::string(to_string(attr))] = to_string(*st.get(attr));
  }
  return j;
}

ComparisonOutcome rank_comparison(int rank1, int rank2) {
  if (rank1 > rank2) return ComparisonOutcome::first;
  if (rank2 > rank1) return ComparisonOutcome::second;
  return ComparisonOutcome::similar;
}

std::string format_pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * fraction);
  return buf;
}

}  // namespace

FitCutoffsReport cmd_fit_cutoffs(const RunConfig& cfg) {
  require_path(cfg.metadata_manifest, "metadata_manifest");
  require_path(cfg.audio_root, "audio_root");
  if (cfg.output_dir.empty()) {
    throw Error(ErrorCode::configuration, "config is missing output_dir");
  }
  fs::create_directories(cfg.output_dir);

  const RegionMapper regions = cfg.region_map.empty()
                                   ? RegionMapper::builtin()
                                   : RegionMapper::load(cfg.region_map);
  const auto metadata = load_speaker_metadata(cfg.metadata_manifest, regions);

  std::vector<std::string> ids;
  ids.reserve(metadata.profiles.size());
  for (const auto& [id, _] : metadata.profiles) ids.push_back(id);

  struct Slot {
    bool ok = false;
    DescriptorResult desc;
  };
  std::vector<Slot> slots(ids.size());
  parallel_for(ids.size(), cfg.workers, [&](std::size_t i) {
    try {
      Waveform w = read_wav(audio_path(cfg.audio_root, ids[i]));
      Rng rng(derive_seed(cfg.seed, "fit", ids[i]));
      const CropResult crop = crop_window(w, CropMode::eval, rng);
      slots[i].desc = extract_descriptors(crop.audio);
      slots[i].ok = true;
    } catch (const Error&) {
      slots[i].ok = false;
    }
  });

  FitCutoffsReport report;
  report.utterances = ids.size();

  std::vector<double> male_f0, female_f0, centroids;
  std::vector<std::string> failed_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!slots[i].ok) {
      ++report.read_errors;
      continue;
    }
    const auto& profile = metadata.profiles.at(ids[i]);
    const auto& desc = slots[i].desc;
    centroids.push_back(desc.mean_centroid);
    if (desc.f0_failed) {
      ++report.f0_failed;
      failed_ids.push_back(ids[i]);
      continue;
    }
    if (!profile.gender) {
      ++report.missing_gender;
      continue;
    }
    (*profile.gender == GenderLabel::male ? male_f0 : female_f0).push_back(*desc.mean_f0);
  }

  report.male_values = male_f0.size();
  report.female_values = female_f0.size();
  report.brightness_values = centroids.size();

  const std::string corpus(to_string(cfg.corpus_kind));
  const auto write_group = [&](const char* file, const char* group,
                               std::vector<double> values) {
    CutoffsRecord rec;
    rec.corpus = corpus;
    rec.group = group;
    rec.sample_count = values.size();
    rec.cutoffs = fit_cutoffs(std::move(values));
    const fs::path path = cfg.output_dir / file;
    write_cutoffs_file(path, rec);
    return path;
  };
  report.male_file = write_group(kMaleCutoffsFile, "male", male_f0);
  report.female_file = write_group(kFemaleCutoffsFile, "female", female_f0);
  report.brightness_file = write_group(kBrightnessCutoffsFile, "pooled", centroids);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["utterances"] = report.utterances;
  j["read_errors"] = report.read_errors;
  j["f0_failed"] = report.f0_failed;
  j["f0_failed_ids"] = failed_ids;
  j["missing_gender"] = report.missing_gender;
  j["values"] = {{"male", report.male_values},
                 {"female", report.female_values},
                 {"brightness", report.brightness_values}};
  report.report_file = cfg.output_dir / "fit_report.json";
  write_text_file(report.report_file, j.dump(2) + "\n");
  return report;
}

namespace {

/// Computes everything build-dataset needs for one utterance. RNG draw order
/// is fixed: crop, plan, then noise alignment inside apply_plan.
UtteranceContext compute_utterance(const RunConfig& cfg, const std::string& id,
                                   const SpeakerProfile& metadata_profile,
                                   const Cutoffs& cutoffs, const NoiseBank& noise_bank,
                                   const RirBank& rir_bank, bool keep_audio) {
  UtteranceContext ctx;
  ctx.id = id;
  ctx.profile = metadata_profile;
  try {
    const Waveform original = read_wav(audio_path(cfg.audio_root, id));
    Rng rng(derive_seed(cfg.seed, "utt", id));

    {
      Rng desc_rng(0);  // eval crop draws nothing
      const CropResult eval_crop = crop_window(original, CropMode::eval, desc_rng);
      ctx.descriptors = extract_descriptors(eval_crop.audio);
    }
    if (!ctx.descriptors.f0_failed && ctx.profile.gender) {
      const GenderLabel g = *ctx.profile.gender;
      const auto& c = g == GenderLabel::male ? cutoffs.pitch.male : cutoffs.pitch.female;
      if (c) ctx.profile.pitch = bin_pitch(*ctx.descriptors.mean_f0, g, cutoffs.pitch);
    }
    if (!ctx.descriptors.f0_failed && cutoffs.brightness) {
      ctx.profile.brightness =
          bin_brightness(ctx.descriptors.mean_centroid, *cutoffs.brightness);
    }

    const CropResult crop = crop_window(original, cfg.crop_mode, rng);
    ctx.crop_start = crop.start_sample;
    ctx.crop_length = crop.audio.size();
    ctx.short_crop = crop.short_input;

    ctx.plan = sample_augmentation(cfg.corpus_kind, rng, noise_bank.ids(), rir_bank.ids());
    AppliedEnvironment applied = apply_plan(crop.audio, ctx.plan, noise_bank, rir_bank, rng);
    ctx.env = applied.labels;
    ctx.clipped_samples = applied.clipped_samples;
    ctx.clip_warning = applied.clip_warning;
    if (keep_audio) ctx.audio = std::move(applied.audio);
    ctx.ok = true;
  } catch (const Error& e) {
    ctx.ok = false;
    ctx.error = e.what();
  }
  return ctx;
}

}  // namespace

BuildReport cmd_build_dataset(const RunConfig& cfg) {
  require_path(cfg.metadata_manifest, "metadata_manifest");
  require_path(cfg.audio_root, "audio_root");
  require_path(cfg.noise_bank, "noise_bank");
  require_path(cfg.rir_bank, "rir_bank");
  require_path(cfg.cutoffs_dir, "cutoffs_dir");
  if (cfg.output_dir.empty()) {
    throw Error(ErrorCode::configuration, "config is missing output_dir");
  }
  fs::create_directories(cfg.output_dir);

  const RegionMapper regions = cfg.region_map.empty()
                                   ? RegionMapper::builtin()
                                   : RegionMapper::load(cfg.region_map);
  const PromptTemplates prompts = cfg.prompt_templates.empty()
                                      ? PromptTemplates::builtin()
                                      : PromptTemplates::load(cfg.prompt_templates);
  const auto metadata = load_speaker_metadata(cfg.metadata_manifest, regions);
  const Cutoffs cutoffs = load_cutoffs_dir(cfg.cutoffs_dir);
  const NoiseBank noise_bank = NoiseBank::load(cfg.noise_bank);
  const RirBank rir_bank = RirBank::load(cfg.rir_bank);
  if (noise_bank.empty() || rir_bank.empty()) {
    throw Error(ErrorCode::configuration,
                "augmentation needs non-empty noise and rir banks");
  }
  std::vector<TrialSpec> trials;
  if (!cfg.trial_list.empty()) {
    require_path(cfg.trial_list, "trial_list");
    trials = load_trial_list(cfg.trial_list);
  }

  BuildReport report;
  report.coverage = metadata.coverage;
  report.metadata_rows_skipped = metadata.coverage.skipped;

  std::vector<std::string> ids;
  ids.reserve(metadata.profiles.size());
  for (const auto& [id, _] : metadata.profiles) ids.push_back(id);
  report.utterances = ids.size();

  std::vector<UtteranceContext> contexts(ids.size());
  parallel_for(ids.size(), cfg.workers, [&](std::size_t i) {
    contexts[i] = compute_utterance(cfg, ids[i], metadata.profiles.at(ids[i]), cutoffs,
                                    noise_bank, rir_bank, cfg.write_audio);
  });

  std::map<std::string, const UtteranceContext*> by_id;
  for (const auto& ctx : contexts) by_id[ctx.id] = &ctx;

  const TargetForm form = cfg.target_form == TargetFormOption::short_form
                              ? TargetForm::short_form
                              : TargetForm::sentence;

  std::ostringstream instances;
  std::ostringstream utterances;
  const auto emit_instance = [&](json j) {
    j["schema_version"] = kSchemaVersion;
    instances << j.dump() << "\n";
    ++report.instances_by_task[j["task"].get<std::string>()];
  };

  for (const auto& ctx : contexts) {
    if (!ctx.ok) {
      ++report.read_errors;
      continue;
    }
    if (ctx.descriptors.f0_failed) ++report.f0_failed;
    if (ctx.clip_warning) ++report.clip_warnings;

    if (cfg.write_audio) {
      const fs::path out = audio_path(cfg.output_dir / "audio", ctx.id);
      fs::create_directories(out.parent_path());
      write_wav(out, ctx.audio);
    }

    json u;
    u["schema_version"] = kSchemaVersion;
    u["utterance_id"] = ctx.id;
    u["profile"] = profile_json(ctx.profile);
    json env;
    env["noise"] = to_string(ctx.env.noise);
    env["reverb"] = to_string(ctx.env.reverb);
    if (ctx.env.target_snr_db) env["target_snr_db"] = *ctx.env.target_snr_db;
    if (ctx.env.rt60_s) env["rt60_s"] = *ctx.env.rt60_s;
    u["environment"] = env;
    json desc;
    if (ctx.descriptors.mean_f0) desc["mean_f0"] = *ctx.descriptors.mean_f0;
    desc["mean_centroid"] = ctx.descriptors.mean_centroid;
    desc["f0_failed"] = ctx.descriptors.f0_failed;
    u["descriptors"] = desc;
    json plan;
    plan["apply_noise"] = ctx.plan.apply_noise;
    plan["apply_reverb"] = ctx.plan.apply_reverb;
    if (ctx.plan.noise_id) plan["noise_id"] = *ctx.plan.noise_id;
    if (ctx.plan.rir_id) plan["rir_id"] = *ctx.plan.rir_id;
    u["augmentation"] = plan;
    u["crop"] = {{"start_sample", ctx.crop_start},
                 {"length", ctx.crop_length},
                 {"short_input", ctx.short_crop}};
    u["clipped_samples"] = ctx.clipped_samples;
    u["clip_warning"] = ctx.clip_warning;
    utterances << u.dump() << "\n";

    // Single-utterance instances. One inclusion draw per canonical task keeps
    // the stream stable whatever subset is enabled.
    Rng task_rng(derive_seed(cfg.seed, "tasks", ctx.id));
    Stage1Labels labels;
    labels.gender = ctx.profile.gender;
    labels.age = ctx.profile.age;
    labels.region = ctx.profile.region;
    labels.pitch = ctx.profile.pitch;
    labels.brightness = ctx.profile.brightness;
    labels.noise = ctx.env.noise;
    labels.reverb = ctx.env.reverb;

    for (const auto& task : single_utterance_tasks()) {
      const double u01 = task_rng.next_double();
      if (!task_enabled(cfg, task) || u01 >= task_weight(cfg, task)) continue;

      const Scenario scenario = *parse_scenario(task);
      const bool available =
          scenario == Scenario::gender        ? labels.gender.has_value()
          : scenario == Scenario::age         ? labels.age.has_value()
          : scenario == Scenario::region      ? labels.region.has_value()
          : scenario == Scenario::voice       ? (labels.pitch && labels.brightness &&
                                                 labels.gender)
          : scenario == Scenario::full_profile ? (labels.gender || labels.age ||
                                                  labels.region ||
                                                  (labels.pitch && labels.brightness &&
                                                   labels.gender))
                                               : true;  // environment tasks
      if (!available) continue;

      json j;
      j["instance_id"] = task + ":" + ctx.id;
      j["task"] = task;
      j["utterance_ids"] = json::array({ctx.id});
      j["prompt"] = prompts.get(task, cfg.closed_options);
      j["target"] = render_stage1(scenario, labels, form);
      json lab = json::object();
      switch (scenario) {
        case Scenario::gender: lab["gender"] = to_string(*labels.gender); break;
        case Scenario::age: lab["age"] = to_string(*labels.age); break;
        case Scenario::region: lab["region"] = to_string(*labels.region); break;
        case Scenario::voice:
          lab["pitch"] = to_string(*labels.pitch);
          lab["brightness"] = to_string(*labels.brightness);
          lab["gender"] = to_string(*labels.gender);
          break;
        case Scenario::full_profile: lab = profile_json(ctx.profile); break;
        case Scenario::noise: lab["noise"] = to_string(ctx.env.noise); break;
        case Scenario::reverb: lab["reverb"] = to_string(ctx.env.reverb); break;
        case Scenario::acoustic_profile:
          lab["noise"] = to_string(ctx.env.noise);
          lab["reverb"] = to_string(ctx.env.reverb);
          break;
        default: break;
      }
      j["labels"] = lab;
      emit_instance(std::move(j));
    }
  }

  // Pair instances, in trial-list order.
  for (const auto& spec : trials) {
    const auto it1 = by_id.find(spec.utt1);
    const auto it2 = by_id.find(spec.utt2);
    if (it1 == by_id.end() || it2 == by_id.end() || !it1->second->ok ||
        !it2->second->ok) {
      ++report.trials_skipped;
      continue;
    }
    ++report.trials;
    const UtteranceContext& u1 = *it1->second;
    const UtteranceContext& u2 = *it2->second;

    TrialRecord trial;
    trial.trial_id = spec.trial_id;
    trial.utt1 = spec.utt1;
    trial.utt2 = spec.utt2;
    trial.gt_label = spec.gt_label;
    trial.profile1 = u1.profile;
    trial.profile2 = u2.profile;
    trial.env1 = u1.env;
    trial.env2 = u2.env;
    trial.support = compute_support(trial.profile1, trial.profile2);
    trial.severity = pair_severity(trial.env1, trial.env2);

    Rng task_rng(derive_seed(cfg.seed, "trial", spec.trial_id));
    const auto& support = *trial.support;
    const auto& severity = *trial.severity;

    const auto pair_header = [&](const std::string& task) {
      json j;
      j["instance_id"] = task + ":" + spec.trial_id;
      j["task"] = task;
      j["trial_id"] = spec.trial_id;
      j["utterance_ids"] = json::array({spec.utt1, spec.utt2});
      j["prompt"] = prompts.get(task, cfg.closed_options);
      j["gt_label"] = to_string(spec.gt_label);
      j["support_level"] = to_string(support.level);
      j["severity"] = to_string(severity.level);
      return j;
    };

    for (const auto& task : pair_tasks()) {
      const double u01 = task_rng.next_double();
      if (!task_enabled(cfg, task) || u01 >= task_weight(cfg, task)) continue;

      if (task == "sv") {
        Stage1Labels l;
        l.verdict = spec.gt_label;
        json j = pair_header(task);
        j["target"] = render_stage1(Scenario::sv, l, form);
        j["labels"] = {{"gt_label", to_string(spec.gt_label)}};
        emit_instance(std::move(j));
      } else if (task == "noise_comparison" || task == "reverb_comparison") {
        const bool noise = task == "noise_comparison";
        const ComparisonOutcome outcome =
            noise ? rank_comparison(degradation_rank(trial.env1.noise),
                                    degradation_rank(trial.env2.noise))
                  : rank_comparison(degradation_rank(trial.env1.reverb),
                                    degradation_rank(trial.env2.reverb));
        Stage1Labels l;
        l.comparison = outcome;
        json j = pair_header(task);
        j["target"] = render_stage1(
            noise ? Scenario::noise_comparison : Scenario::reverb_comparison, l, form);
        Stage1Labels short_l;
        short_l.comparison = outcome;
        j["labels"] = {{"outcome", render_stage1(noise ? Scenario::noise_comparison
                                                       : Scenario::reverb_comparison,
                                                 short_l, TargetForm::short_form)}};
        emit_instance(std::move(j));
      } else if (task == "compat_gender" || task == "compat_age" ||
                 task == "compat_region") {
        const Attribute attr = task == "compat_gender" ? Attribute::gender
                               : task == "compat_age"  ? Attribute::age
                                                       : Attribute::region;
        const auto& state = support.states.get(attr);
        if (!state) continue;
        json j = pair_header(task);
        j["target"] = render_compat_clause(attr, *state);
        j["labels"] = {{"state", to_string(*state)}};
        emit_instance(std::move(j));
      } else if (task == "compat_voice") {
        if (!support.states.pitch && !support.states.brightness) continue;
        json j = pair_header(task);
        j["target"] =
            render_voice_clauses(support.states.pitch, support.states.brightness, true);
        json lab = json::object();
        if (support.states.pitch) lab["pitch"] = to_string(*support.states.pitch);
        if (support.states.brightness)
          lab["brightness"] = to_string(*support.states.brightness);
        j["labels"] = lab;
        emit_instance(std::move(j));
      } else if (task == "compat_holistic") {
        json j = pair_header(task);
        j["target"] = render_compat_qa(support, true);
        j["labels"] = states_json(support.states);
        emit_instance(std::move(j));
      } else if (task == "svr") {
        if (!trial.profile1.complete() || !trial.profile2.complete()) {
          ++report.svr_ineligible;
          continue;
        }
        const SvrTarget target = render_svr_target(trial);
        json j = pair_header(task);
        j["target"] = target.text();
        j["case_kind"] = to_string(target.case_kind);
        j["attribute_states"] = states_json(support.states);
        j["env"] = {{"noise1", to_string(trial.env1.noise)},
                    {"reverb1", to_string(trial.env1.reverb)},
                    {"noise2", to_string(trial.env2.noise)},
                    {"reverb2", to_string(trial.env2.reverb)}};
        j["labels"] = {{"gt_label", to_string(spec.gt_label)}};
        emit_instance(std::move(j));
      }
    }
  }

  report.instances_file = cfg.output_dir / "instances.jsonl";
  report.utterances_file = cfg.output_dir / "utterances.jsonl";
  write_text_file(report.instances_file, instances.str());
  write_text_file(report.utterances_file, utterances.str());

  json j;
  j["schema_version"] = kSchemaVersion;
  j["utterances"] = report.utterances;
  j["read_errors"] = report.read_errors;
  j["metadata_rows_skipped"] = report.metadata_rows_skipped;
  j["f0_failed"] = report.f0_failed;
  j["clip_warnings"] = report.clip_warnings;
  j["trials"] = report.trials;
  j["trials_skipped"] = report.trials_skipped;
  j["svr_ineligible"] = report.svr_ineligible;
  j["coverage"] = {{"total_rows", report.coverage.total_rows},
                   {"loaded", report.coverage.loaded},
                   {"skipped", report.coverage.skipped},
                   {"gender", report.coverage.with_gender},
                   {"age", report.coverage.with_age},
                   {"region", report.coverage.with_region}};
  j["instances_by_task"] = report.instances_by_task;
  report.report_file = cfg.output_dir / "build_report.json";
  write_text_file(report.report_file, j.dump(2) + "\n");
  return report;
}

namespace {

struct Reference {
  std::string trial_id;
  Verdict gt_label = Verdict::same;
  SupportLevel support_level = SupportLevel::mixed;
  SupportAssessment support;  // rebuilt from attribute_states (svr mode)
};

std::vector<Reference> load_references(const fs::path& path, ScoreMode mode) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open references: " + path.string());
  }
  const std::string want = mode == ScoreMode::sv ? "sv" : "svr";
  std::vector<Reference> refs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse, "references line " + std::to_string(lineno) +
                                        ": " + e.what());
    }
    if (j.value("task", "") != want) continue;
    Reference ref;
    ref.trial_id = j.value("trial_id", "");
    const auto gt = parse_verdict_label(j.value("gt_label", ""));
    const auto level = parse_support_level(j.value("support_level", ""));
    if (ref.trial_id.empty() || !gt || !level) {
      throw Error(ErrorCode::parse, "references line " + std::to_string(lineno) +
                                        ": missing trial_id/gt_label/support_level");
    }
    ref.gt_label = *gt;
    ref.support_level = *level;
    if (mode == ScoreMode::svr) {
      AttributeStates states;
      if (j.contains("attribute_states")) {
        for (const auto& [key, value] : j["attribute_states"].items()) {
          const std::string name = value.get<std::string>();
          const CompatState state = name == "compatible" ? CompatState::compatible
                                    : name == "partial"  ? CompatState::partial
                                                         : CompatState::conflicting;
          for (const auto attr : kAllAttributes) {
            if (to_string(attr) == key) states.get(attr) = state;
          }
        }
      }
      ref.support = score_states(states);
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

std::map<std::string, std::string> load_predictions(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open predictions: " + path.string());
  }
  std::map<std::string, std::string> preds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse, "predictions line " + std::to_string(lineno) +
                                        ": " + e.what());
    }
    const std::string id = j.value("trial_id", "");
    if (id.empty()) {
      throw Error(ErrorCode::parse,
                  "predictions line " + std::to_string(lineno) + ": missing trial_id");
    }
    if (!preds.emplace(id, j.value("generated_text", "")).second) {
      throw Error(ErrorCode::duplicate_key,
                  "duplicate prediction for trial '" + id + "'");
    }
  }
  return preds;
}

}  // namespace

ScoreReport cmd_score(const ScoreOptions& opts) {
  const auto refs = load_references(opts.references, opts.mode);
  const auto preds = load_predictions(opts.predictions);

  ScoreReport report;
  report.mode = opts.mode;
  report.reference_count = refs.size();
  report.prediction_count = preds.size();

  std::vector<ScoredTrial> scored;
  std::ostringstream details;
  double grounding_macro_sum = 0.0;
  std::size_t grounding_micro_match = 0;
  std::size_t grounding_micro_total = 0;
  std::size_t support_grounded = 0;

  std::map<std::string, bool> matched_pred;
  for (const auto& [id, _] : preds) matched_pred[id] = false;

  for (const auto& ref : refs) {
    const auto it = preds.find(ref.trial_id);
    if (it == preds.end()) {
      ++report.unmatched_references;
      report.unmatched_ids.push_back(ref.trial_id);
      continue;
    }
    matched_pred[ref.trial_id] = true;
    const std::string& text = it->second;

    ScoredTrial trial;
    trial.gt_label = ref.gt_label;
    trial.support_level = ref.support_level;

    json detail;
    detail["trial_id"] = ref.trial_id;
    detail["gt_label"] = to_string(ref.gt_label);
    detail["support_level"] = to_string(ref.support_level);

    if (opts.mode == ScoreMode::sv) {
      const ParseOutcome verdict = parse_verdict(text);
      if (verdict.failed) {
        ++report.parse_failures;
      } else {
        trial.predicted =
            *verdict.label == "same" ? Verdict::same : Verdict::different;
      }
    } else {
      const ParsedTrace trace = parse_svr_trace(text);
      if (trace.format_valid) ++report.format_valid;
      if (trace.verdict) {
        trial.predicted = trace.verdict;
      } else {
        ++report.parse_failures;
      }
      const double grounding = attribute_grounding(trace, ref.support);
      grounding_macro_sum += grounding;
      for (const auto attr : kAllAttributes) {
        const auto& ref_state = ref.support.states.get(attr);
        if (!ref_state) continue;
        ++grounding_micro_total;
        const auto& got = trace.clauses.get(attr);
        if (trace.format_valid && got && *got == *ref_state) ++grounding_micro_match;
      }
      const bool s_grounded = support_grounding(trace, ref.support);
      if (s_grounded) ++support_grounded;
      detail["format_valid"] = trace.format_valid;
      detail["attribute_grounding"] = grounding;
      detail["support_grounding"] = s_grounded;
    }

    detail["predicted"] =
        trial.predicted ? std::string(to_string(*trial.predicted)) : std::string();
    detail["correct"] = trial.predicted && *trial.predicted == trial.gt_label;
    details << detail.dump() << "\n";
    scored.push_back(trial);
  }

  for (const auto& [id, used] : matched_pred) {
    if (!used) {
      ++report.unmatched_predictions;
      report.unmatched_ids.push_back(id);
    }
  }

  if (scored.empty()) {
    throw Error(ErrorCode::empty_input, "no prediction matches any reference trial");
  }
  report.scored = scored.size();
  report.diagnostics = subset_diagnostics(scored);

  if (opts.mode == ScoreMode::svr) {
    const auto n = static_cast<double>(report.scored);
    report.format_valid_rate = static_cast<double>(report.format_valid) / n;
    report.attribute_grounding_macro = grounding_macro_sum / n;
    report.attribute_grounding_micro =
        grounding_micro_total == 0 ? 0.0
                                   : static_cast<double>(grounding_micro_match) /
                                         static_cast<double>(grounding_micro_total);
    report.support_grounding_rate = static_cast<double>(support_grounded) / n;
  }

  if (!opts.details_out.empty()) {
    write_text_file(opts.details_out, details.str());
  }
  if (!opts.report_out.empty()) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = opts.mode == ScoreMode::sv ? "sv" : "svr";
    j["references"] = report.reference_count;
    j["predictions"] = report.prediction_count;
    j["scored"] = report.scored;
    j["unmatched_references"] = report.unmatched_references;
    j["unmatched_predictions"] = report.unmatched_predictions;
    j["unmatched_ids"] = report.unmatched_ids;
    j["parse_failures"] = report.parse_failures;
    const auto& d = report.diagnostics;
    const auto cell = [](const CellStats& c) {
      return json{{"count", c.count}, {"correct", c.correct}, {"accuracy", c.accuracy()}};
    };
    j["accuracy"] = {{"overall", cell(d.overall)},
                     {"gt_different", cell(d.gt_different)},
                     {"gt_same", cell(d.gt_same)},
                     {"aligned", cell(d.aligned)},
                     {"mixed", cell(d.mixed)},
                     {"reversal", cell(d.reversal)},
                     {"supportive_to_different", cell(d.supportive_to_different)},
                     {"conflicting_to_same", cell(d.conflicting_to_same)}};
    if (opts.mode == ScoreMode::svr) {
      j["format_valid_rate"] = report.format_valid_rate;
      j["attribute_grounding"] = {{"per_clause", report.attribute_grounding_micro},
                                  {"per_trial", report.attribute_grounding_macro}};
      j["support_grounding_rate"] = report.support_grounding_rate;
    }
    write_text_file(opts.report_out, j.dump(2) + "\n");
  }
  return report;
}

DiagnosticsReport cmd_diagnose(const std::filesystem::path& details_file) {
  std::ifstream in(details_file);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open details file: " + details_file.string());
  }
  std::vector<ScoredTrial> scored;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse, "details line " + std::to_string(lineno) + ": " + e.what());
    }
    ScoredTrial t;
    const auto gt = parse_verdict_label(j.value("gt_label", ""));
    const auto level = parse_support_level(j.value("support_level", ""));
    if (!gt || !level) {
      throw Error(ErrorCode::parse, "details line " + std::to_string(lineno) +
                                        ": missing gt_label/support_level");
    }
    t.gt_label = *gt;
    t.support_level = *level;
    const std::string predicted = j.value("predicted", "");
    if (!predicted.empty()) t.predicted = parse_verdict_label(predicted);
    scored.push_back(t);
  }
  return subset_diagnostics(scored);
}

std::string render_diagnostics_table(const DiagnosticsReport& r) {
  std::ostringstream out;
  char buf[128];
  const auto row = [&](const char* name, const CellStats& c) {
    std::snprintf(buf, sizeof buf, "  %-24s %8zu %8zu  %s\n", name, c.count, c.correct,
                  c.count ? format_pct(c.accuracy()).c_str() : "     --");
    out << buf;
  };
  std::snprintf(buf, sizeof buf, "  %-24s %8s %8s  %s\n", "subset", "count", "correct",
                "accuracy");
  out << buf;
  row("overall", r.overall);
  row("gt = different", r.gt_different);
  row("gt = same", r.gt_same);
  row("aligned", r.aligned);
  row("mixed", r.mixed);
  row("reversal", r.reversal);
  row("supportive -> different", r.supportive_to_different);
  row("conflicting -> same", r.conflicting_to_same);
  return out.str();
}

std::string render_score_table(const ScoreReport& r) {
  std::ostringstream out;
  out << "mode: " << (r.mode == ScoreMode::sv ? "sv" : "svr") << "\n";
  out << "scored " << r.scored << " of " << r.reference_count << " references ("
      << r.prediction_count << " predictions, " << r.unmatched_references
      << " unmatched references, " << r.unmatched_predictions
      << " unmatched predictions)\n";
  out << "parse failures: " << r.parse_failures << "\n";
  if (r.mode == ScoreMode::svr) {
    out << "format valid: " << format_pct(r.format_valid_rate) << " (" << r.format_valid
        << "/" << r.scored << ")\n";
    out << "attribute grounding (per-clause): "
        << format_pct(r.attribute_grounding_micro) << "\n";
    out << "attribute grounding (per-trial):  "
        << format_pct(r.attribute_grounding_macro) << "\n";
    out << "profile-support grounding: " << format_pct(r.support_grounding_rate) << "\n";
  }
  out << "\n" << render_diagnostics_table(r.diagnostics);
  return out.str();
}

}  // namespace svr
