#include "svrkit/compose.hpp"

#include <array>

#include "svrkit/error.hpp"

namespace svr {

namespace {

[[noreturn]] void missing_slot(const char* slot) {
  throw Error(ErrorCode::missing_slot,
              std::string("template slot '") + slot + "' has no value");
}

template <typename T>
const T& require(const std::optional<T>& v, const char* slot) {
  if (!v) missing_slot(slot);
  return *v;
}

std::string str(std::string_view sv) { return std::string(sv); }

// Degree words: age uses "slightly", the voice sub-attributes and summaries
// use "somewhat".
std::string_view age_degree(CompatState s) {
  switch (s) {
    case CompatState::compatible: return "similar";
    case CompatState::partial: return "slightly different";
    case CompatState::conflicting: return "very different";
  }
  return "";
}

std::string_view voice_degree(CompatState s) {
  switch (s) {
    case CompatState::compatible: return "similar";
    case CompatState::partial: return "somewhat different";
    case CompatState::conflicting: return "very different";
  }
  return "";
}

std::string_view penalty_degree(int p) {
  if (p <= 0) return "similar";
  if (p == 1) return "somewhat different";
  return "very different";
}

std::string_view level_degree(SupportLevel level) {
  switch (level) {
    case SupportLevel::supportive: return "similar";
    case SupportLevel::mixed: return "somewhat different";
    case SupportLevel::conflicting: return "very different";
  }
  return "";
}

std::string_view env_clause(SeverityLevel severity) {
  switch (severity) {
    case SeverityLevel::low:
      return "Environmental mismatch or degradation is limited, so the "
             "speaker-relevant vocal cues remain clear.";
    case SeverityLevel::moderate:
      return "Environmental mismatch or degradation is present, so the "
             "speaker-relevant vocal cues are partially degraded.";
    case SeverityLevel::extreme:
      return "Strong environmental mismatch or severe degradation substantially "
             "weakens the speaker-relevant vocal cues.";
  }
  return "";
}

std::string_view profile_summary(SupportLevel level) {
  switch (level) {
    case SupportLevel::supportive:
      return "Across the speaker profile, many attributes are similar.";
    case SupportLevel::mixed:
      return "Across the speaker profile, some attributes are similar, while "
             "others differ.";
    case SupportLevel::conflicting:
      return "Across the speaker profile, several attributes differ.";
  }
  return "";
}

// Identity-cue sentence per (support, label) cell; the connector is part of
// the sentence.
std::string_view identity_sentence(SupportLevel level, Verdict gt) {
  if (level == SupportLevel::supportive) {
    return gt == Verdict::same
               ? "Likewise, the latent speaker-identity cues also show strong "
                 "similarity."
               : "However, the latent speaker-identity cues show stronger "
                 "separation.";
  }
  if (level == SupportLevel::mixed) {
    return gt == Verdict::same
               ? "The latent speaker-identity cues show stronger similarity."
               : "However, the latent speaker-identity cues show stronger "
                 "separation.";
  }
  return gt == Verdict::same
             ? "However, the latent speaker-identity cues show stronger "
               "similarity."
             : "Likewise, the latent speaker-identity cues also show clear "
               "differences.";
}

std::string_view verdict_sentence(Verdict gt) {
  return gt == Verdict::same
             ? "Taken together, the recordings are determined to be from the "
               "same speaker."
             : "Taken together, the recordings are determined to be from "
               "different speakers.";
}

std::string_view env_noise_word(NoiseClass c) {
  // Golden-example wording: the clean class reads "no background" inside the
  // environment-status block only.
  return c == NoiseClass::clean ? "no background" : to_string(c);
}

void append_sentence(std::string& out, std::string_view sentence) {
  if (sentence.empty()) return;
  if (!out.empty()) out += ' ';
  out += sentence;
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::gender: return "gender";
    case Scenario::age: return "age";
    case Scenario::region: return "region";
    case Scenario::voice: return "voice";
    case Scenario::full_profile: return "full_profile";
    case Scenario::noise: return "noise";
    case Scenario::reverb: return "reverb";
    case Scenario::acoustic_profile: return "acoustic_profile";
    case Scenario::sv: return "sv";
    case Scenario::noise_comparison: return "noise_comparison";
    case Scenario::reverb_comparison: return "reverb_comparison";
  }
  return "";
}

std::optional<Scenario> parse_scenario(std::string_view s) noexcept {
  static constexpr std::array<Scenario, 11> all = {
      Scenario::gender,         Scenario::age,
      Scenario::region,         Scenario::voice,
      Scenario::full_profile,   Scenario::noise,
      Scenario::reverb,         Scenario::acoustic_profile,
      Scenario::sv,             Scenario::noise_comparison,
      Scenario::reverb_comparison,
  };
  for (const auto sc : all) {
    if (to_string(sc) == s) return sc;
  }
  return std::nullopt;
}

std::string age_phrase(AgeBin bin) {
  return "in the " + str(to_string(bin)) + " range";
}

namespace {

std::string voice_phrase(const Stage1Labels& l) {
  const auto& brightness = require(l.brightness, "brightness");
  const auto& pitch = require(l.pitch, "pitch");
  const auto& gender = require(l.gender, "gender");
  return str(to_string(brightness)) + " voice and " + str(to_string(pitch)) + " " +
         str(to_string(gender)) + "-range pitch";
}

std::string render_full_profile(const Stage1Labels& l, TargetForm form) {
  // Concatenation of the available atomic pieces; at least one is required.
  std::string out;
  const bool sentence = form == TargetForm::sentence;
  const auto add = [&](const std::string& piece) {
    if (piece.empty()) return;
    if (!out.empty()) out += sentence ? " " : ", ";
    out += piece;
  };
  if (l.gender) {
    add(sentence ? "The speaker is " + str(to_string(*l.gender)) + "."
                 : str(to_string(*l.gender)));
  }
  if (l.age) {
    add(sentence ? "The speaker is likely " + age_phrase(*l.age) + "."
                 : age_phrase(*l.age));
  }
  if (l.region) {
    add(sentence ? "The speaker has a " + str(to_string(*l.region)) +
                       " regional background."
                 : str(to_string(*l.region)));
  }
  if (l.pitch && l.brightness && l.gender) {
    add(sentence ? "The speaker has a " + voice_phrase(l) + "." : voice_phrase(l));
  }
  if (out.empty()) missing_slot("profile");
  return out;
}

}  // namespace

std::string render_stage1(Scenario scenario, const Stage1Labels& l, TargetForm form) {
  const bool sentence = form == TargetForm::sentence;
  switch (scenario) {
    case Scenario::gender: {
      const auto& g = require(l.gender, "gender");
      return sentence
                 ? "The speaker's gender is inferred to be " + str(to_string(g)) + "."
                 : str(to_string(g));
    }
    case Scenario::age: {
      const auto& a = require(l.age, "age");
      return sentence ? "The speaker's age is " + age_phrase(a) + "." : age_phrase(a);
    }
    case Scenario::region: {
      const auto& r = require(l.region, "region");
      return sentence
                 ? "The speaker's regional background is " + str(to_string(r)) + "."
                 : str(to_string(r));
    }
    case Scenario::voice: {
      const std::string phrase = voice_phrase(l);
      return sentence ? "The speaker has a " + phrase + "." : phrase;
    }
    case Scenario::full_profile:
      return render_full_profile(l, form);
    case Scenario::noise: {
      const auto& n = require(l.noise, "noise");
      return sentence ? "The recording has " + str(to_string(n)) + " noise."
                      : str(to_string(n));
    }
    case Scenario::reverb: {
      const auto& r = require(l.reverb, "reverb");
      return sentence ? "The recording has " + str(to_string(r)) + " reverberation."
                      : str(to_string(r));
    }
    case Scenario::acoustic_profile: {
      const auto& n = require(l.noise, "noise");
      const auto& r = require(l.reverb, "reverb");
      const std::string phrase =
          str(to_string(n)) + " noise and " + str(to_string(r)) + " reverberation";
      return sentence ? "The recording has " + phrase + "." : phrase;
    }
    case Scenario::sv: {
      const auto& v = require(l.verdict, "verdict");
      if (!sentence) return str(to_string(v));
      return v == Verdict::same ? "These recordings are from the same speaker."
                                : "These recordings are from different speakers.";
    }
    case Scenario::noise_comparison: {
      const auto& c = require(l.comparison, "comparison");
      if (!sentence) {
        return c == ComparisonOutcome::first    ? "speech1"
               : c == ComparisonOutcome::second ? "speech2"
                                                : "similar";
      }
      return c == ComparisonOutcome::first    ? "Speech 1 is noisier."
             : c == ComparisonOutcome::second ? "Speech 2 is noisier."
                                              : "Both recordings have similar noise levels.";
    }
    case Scenario::reverb_comparison: {
      const auto& c = require(l.comparison, "comparison");
      if (!sentence) {
        return c == ComparisonOutcome::first    ? "speech1"
               : c == ComparisonOutcome::second ? "speech2"
                                                : "similar";
      }
      return c == ComparisonOutcome::first
                 ? "Speech 1 is more reverberant."
                 : c == ComparisonOutcome::second
                       ? "Speech 2 is more reverberant."
                       : "Both recordings have similar reverberation levels.";
    }
  }
  throw Error(ErrorCode::configuration, "unknown scenario");
}

std::string render_compat_clause(Attribute attr, CompatState state) {
  switch (attr) {
    case Attribute::gender:
      return state == CompatState::compatible ? "Gender is similar."
                                              : "Gender is different.";
    case Attribute::age:
      return "The age ranges are " + str(age_degree(state)) + ".";
    case Attribute::region:
      return state == CompatState::compatible ? "Linguistic background is similar."
                                              : "Linguistic background is different.";
    case Attribute::pitch:
      return "Pitch is " + str(voice_degree(state)) + ".";
    case Attribute::brightness:
      return "Timbral brightness is " + str(voice_degree(state)) + ".";
  }
  throw Error(ErrorCode::configuration, "unknown attribute");
}

std::string render_voice_clauses(std::optional<CompatState> pitch,
                                 std::optional<CompatState> brightness,
                                 bool include_summary) {
  std::string out;
  if (pitch) append_sentence(out, render_compat_clause(Attribute::pitch, *pitch));
  if (brightness) {
    append_sentence(out, render_compat_clause(Attribute::brightness, *brightness));
  }
  if (include_summary && (pitch || brightness)) {
    const int p = voice_penalty(pitch, brightness);
    append_sentence(out, "Therefore, the vocal characteristics are " +
                             str(penalty_degree(p)) + ".");
  }
  return out;
}

std::string render_compat_qa(const SupportAssessment& support, bool holistic) {
  const auto& st = support.states;
  std::string out;
  if (st.gender) append_sentence(out, render_compat_clause(Attribute::gender, *st.gender));
  if (st.age) append_sentence(out, render_compat_clause(Attribute::age, *st.age));
  if (st.region) append_sentence(out, render_compat_clause(Attribute::region, *st.region));
  append_sentence(out, render_voice_clauses(st.pitch, st.brightness, true));
  if (holistic) {
    append_sentence(out, "Therefore, the overall speaker profile is " +
                             str(level_degree(support.level)) + ".");
  }
  return out;
}

std::string render_environment_status(const EnvironmentLabels& env1,
                                      const EnvironmentLabels& env2) {
  return "The first recording contains " + str(env_noise_word(env1.noise)) +
         " noise and " + str(to_string(env1.reverb)) +
         " reverberation. The second recording contains " +
         str(env_noise_word(env2.noise)) + " noise and " + str(to_string(env2.reverb)) +
         " reverberation.";
}

std::string compose_decision(const DecisionInputs& inputs) {
  std::string out = str(env_clause(inputs.severity.level));
  append_sentence(out, profile_summary(inputs.support));
  append_sentence(out, identity_sentence(inputs.support, inputs.gt_label));
  append_sentence(out, verdict_sentence(inputs.gt_label));
  return out;
}

CaseKind classify_case(SupportLevel support, Verdict gt_label) noexcept {
  if (support == SupportLevel::mixed) return CaseKind::mixed;
  const bool supports_same = support == SupportLevel::supportive;
  const bool is_same = gt_label == Verdict::same;
  return supports_same == is_same ? CaseKind::aligned : CaseKind::reversal;
}

std::string SvrTarget::text() const {
  return "ENVIRONMENT_STATUS:\n" + environment_status +
         "\n\nPROFILE_COMPATIBILITY:\n" + profile_compatibility + "\n\nDECISION:\n" +
         decision + "\n";
}

SvrTarget render_svr_target(const TrialRecord& trial) {
  for (const auto* p : {&trial.profile1, &trial.profile2}) {
    if (!p->complete()) {
      std::string missing;
      for (const auto attr : kAllAttributes) {
        const bool present = attr == Attribute::gender       ? p->gender.has_value()
                             : attr == Attribute::age        ? p->age.has_value()
                             : attr == Attribute::region     ? p->region.has_value()
                             : attr == Attribute::pitch      ? p->pitch.has_value()
                                                             : p->brightness.has_value();
        if (!present) {
          if (!missing.empty()) missing += ", ";
          missing += to_string(attr);
        }
      }
      throw Error(ErrorCode::ineligible_trial,
                  "trial '" + trial.trial_id + "': profile '" + p->utterance_id +
                      "' missing " + missing);
    }
  }

  const SupportAssessment support =
      trial.support ? *trial.support : compute_support(trial.profile1, trial.profile2);
  const PairSeverity severity =
      trial.severity ? *trial.severity : pair_severity(trial.env1, trial.env2);

  SvrTarget target;
  target.environment_status = render_environment_status(trial.env1, trial.env2);

  const auto& st = support.states;
  std::string block;
  append_sentence(block, render_compat_clause(Attribute::gender, *st.gender));
  append_sentence(block, render_compat_clause(Attribute::age, *st.age));
  append_sentence(block, render_compat_clause(Attribute::region, *st.region));
  append_sentence(block, render_compat_clause(Attribute::pitch, *st.pitch));
  append_sentence(block, render_compat_clause(Attribute::brightness, *st.brightness));
  target.profile_compatibility = std::move(block);

  target.decision = compose_decision({severity, support.level, trial.gt_label});
  target.case_kind = classify_case(support.level, trial.gt_label);
  return target;
}

}  // namespace svr
