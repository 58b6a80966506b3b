#include "svrkit/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "svrkit/error.hpp"

namespace svr {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<Verdict> parse_trial_label(const std::string& s) {
  if (s == "1" || s == "same") return Verdict::same;
  if (s == "0" || s == "different") return Verdict::different;
  return std::nullopt;
}

constexpr const char* kPromptVersion = "v1";

const std::map<std::string, std::string>& builtin_questions() {
  static const std::map<std::string, std::string> q = {
      {"gender", "What is the gender of the speaker?"},
      {"age", "What is the approximate age of the speaker?"},
      {"region", "What is the regional background of the speaker?"},
      {"voice", "Describe the voice characteristics of the speaker."},
      {"full_profile", "Describe the speaker's profile."},
      {"noise", "What is the background noise level of the recording?"},
      {"reverb", "What is the reverberation level of the recording?"},
      {"acoustic_profile", "Describe the acoustic conditions of the recording."},
      {"sv", "Are these recordings from the same speaker?"},
      {"noise_comparison", "Which recording is noisier?"},
      {"reverb_comparison", "Which recording is more reverberant?"},
      {"compat_gender", "Compare the gender of the two speakers."},
      {"compat_age", "Compare the age ranges of the two speakers."},
      {"compat_region", "Compare the linguistic backgrounds of the two speakers."},
      {"compat_voice", "Compare the vocal characteristics of the two speakers."},
      {"compat_holistic", "Compare the overall speaker profiles of the two recordings."},
      {"svr",
       "Determine whether these recordings are from the same speaker. Describe the "
       "recording conditions and the profile evidence before giving the decision."},
  };
  return q;
}

}  // namespace

std::vector<TrialSpec> load_trial_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open trial list: " + path.string());
  }
  std::vector<TrialSpec> trials;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream row(t);
    std::vector<std::string> fields;
    std::string field;
    while (row >> field) fields.push_back(field);

    TrialSpec spec;
    std::string label;
    if (fields.size() == 3) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "t%06zu", trials.size() + 1);
      spec.trial_id = buf;
      label = fields[0];
      spec.utt1 = fields[1];
      spec.utt2 = fields[2];
    } else if (fields.size() == 4) {
      spec.trial_id = fields[0];
      label = fields[1];
      spec.utt1 = fields[2];
      spec.utt2 = fields[3];
    } else {
      throw Error(ErrorCode::parse, "trial list line " + std::to_string(lineno) +
                                        ": expected 3 or 4 fields");
    }
    const auto verdict = parse_trial_label(label);
    if (!verdict) {
      throw Error(ErrorCode::parse, "trial list line " + std::to_string(lineno) +
                                        ": bad label '" + label + "'");
    }
    spec.gt_label = *verdict;
    trials.push_back(std::move(spec));
  }
  return trials;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open config: " + path.string());
  }
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::parse,
                  "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto bad = [&](const std::string& why) {
      return Error(ErrorCode::configuration,
                   "config line " + std::to_string(lineno) + " (" + key + "): " + why);
    };

    if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "corpus_kind") {
      const auto kind = parse_corpus_kind(value);
      if (!kind) throw bad("expected voxceleb-like or libritts-like");
      cfg.corpus_kind = *kind;
    } else if (key == "audio_root") {
      cfg.audio_root = value;
    } else if (key == "metadata_manifest") {
      cfg.metadata_manifest = value;
    } else if (key == "noise_bank") {
      cfg.noise_bank = value;
    } else if (key == "rir_bank") {
      cfg.rir_bank = value;
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "trial_list") {
      cfg.trial_list = value;
    } else if (key == "cutoffs_dir") {
      cfg.cutoffs_dir = value;
    } else if (key == "region_map") {
      cfg.region_map = value;
    } else if (key == "prompt_templates") {
      cfg.prompt_templates = value;
    } else if (key == "crop_mode") {
      if (value == "train") cfg.crop_mode = CropMode::train;
      else if (value == "eval") cfg.crop_mode = CropMode::eval;
      else throw bad("expected train or eval");
    } else if (key == "target_form") {
      if (value == "short") cfg.target_form = TargetFormOption::short_form;
      else if (value == "sentence") cfg.target_form = TargetFormOption::sentence;
      else throw bad("expected short or sentence");
    } else if (key == "closed_options") {
      if (value == "true") cfg.closed_options = true;
      else if (value == "false") cfg.closed_options = false;
      else throw bad("expected true or false");
    } else if (key == "write_audio") {
      if (value == "true") cfg.write_audio = true;
      else if (value == "false") cfg.write_audio = false;
      else throw bad("expected true or false");
    } else if (key == "workers") {
      cfg.workers = std::stoi(value);
      if (cfg.workers < 1) throw bad("workers must be >= 1");
    } else if (key == "tasks") {
      std::istringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) {
        const std::string name = trim(item);
        if (!name.empty()) cfg.tasks.push_back(name);
      }
    } else if (key.rfind("task_weight.", 0) == 0) {
      const std::string task = key.substr(std::string("task_weight.").size());
      const double w = std::stod(value);
      if (w < 0.0 || w > 1.0) throw bad("weight must be in [0, 1]");
      cfg.task_weights[task] = w;
    } else {
      throw bad("unknown key");
    }
  }
  return cfg;
}

const PromptTemplates& PromptTemplates::builtin() {
  static const PromptTemplates instance = [] {
    PromptTemplates p;
    p.version_ = kPromptVersion;
    p.questions_ = builtin_questions();
    return p;
  }();
  return instance;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open prompt templates: " + path.string());
  }
  PromptTemplates p;
  p.version_ = path.filename().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::parse, "prompt templates line " + std::to_string(lineno) +
                                        " needs task<TAB>question");
    }
    p.questions_[trim(line.substr(0, tab))] = trim(line.substr(tab + 1));
  }
  return p;
}

std::string PromptTemplates::get(const std::string& task, bool closed_options) const {
  const auto it = questions_.find(task);
  if (it == questions_.end()) {
    throw Error(ErrorCode::configuration, "no prompt template for task '" + task + "'");
  }
  std::string prompt = it->second;
  if (closed_options) {
    const std::string suffix = closed_option_suffix(task);
    if (!suffix.empty()) prompt += " " + suffix;
  }
  return prompt;
}

const std::vector<std::string>& single_utterance_tasks() {
  static const std::vector<std::string> tasks = {
      "gender", "age",    "region", "voice",
      "full_profile", "noise", "reverb", "acoustic_profile",
  };
  return tasks;
}

const std::vector<std::string>& pair_tasks() {
  static const std::vector<std::string> tasks = {
      "sv",          "noise_comparison", "reverb_comparison", "compat_gender",
      "compat_age",  "compat_region",    "compat_voice",      "compat_holistic",
      "svr",
  };
  return tasks;
}

std::string closed_option_suffix(const std::string& task) {
  if (task == "gender") {
    return "Answer with one of: male, female.";
  }
  if (task == "age") {
    std::string s = "Answer with one of the age ranges: ";
    for (int i = 0; i < kAgeBinCount; ++i) {
      if (i > 0) s += ", ";
      s += to_string(static_cast<AgeBin>(i));
    }
    return s + ".";
  }
  if (task == "region") {
    std::string s = "Answer with one of: ";
    for (int i = 0; i < kRegionClassCount; ++i) {
      if (i > 0) s += ", ";
      s += to_string(static_cast<RegionClass>(i));
    }
    return s + ".";
  }
  if (task == "noise") {
    return "Answer with one of: clean (SNR >= 20 dB), mild (10-20 dB), "
           "moderate (5-10 dB), severe (0-5 dB), extreme (< 0 dB).";
  }
  if (task == "reverb") {
    return "Answer with one of: minimal (RT60 <= 0.3 s), slight (0.3-0.6 s), "
           "moderate (0.6-1.0 s), heavy (1.0-1.5 s), extreme (> 1.5 s).";
  }
  if (task == "sv") {
    return "Answer with one of: same, different.";
  }
  if (task == "noise_comparison" || task == "reverb_comparison") {
    return "Answer with one of: speech1, speech2, similar.";
  }
  if (task == "voice") {
    return "Pitch is one of: very low, low, normal, high, very high "
           "(relative to the speaker's gender group). Brightness is one of: "
           "muted, mellow, neutral, bright, brilliant.";
  }
  return "";
}

}  // namespace svr
