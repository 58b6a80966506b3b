#pragma once

// Frozen full-target fixtures for the three canonical verification-reasoning
// cases (aligned supportive, reversal, aligned conflicting), plus the trial
// inputs that must reproduce them byte-identically.

#include <string>

#include "svrkit/trial.hpp"

namespace golden {

inline const std::string kExample1 =
    "ENVIRONMENT_STATUS:\n"
    "The first recording contains no background noise and minimal reverberation. "
    "The second recording contains mild noise and slight reverberation.\n"
    "\n"
    "PROFILE_COMPATIBILITY:\n"
    "Gender is similar. The age ranges are similar. Linguistic background is "
    "similar. Pitch is similar. Timbral brightness is similar.\n"
    "\n"
    "DECISION:\n"
    "Environmental mismatch or degradation is limited, so the speaker-relevant "
    "vocal cues remain clear. Across the speaker profile, many attributes are "
    "similar. Likewise, the latent speaker-identity cues also show strong "
    "similarity. Taken together, the recordings are determined to be from the "
    "same speaker.\n";

inline const std::string kExample2 =
    "ENVIRONMENT_STATUS:\n"
    "The first recording contains moderate noise and slight reverberation. "
    "The second recording contains mild noise and moderate reverberation.\n"
    "\n"
    "PROFILE_COMPATIBILITY:\n"
    "Gender is similar. The age ranges are similar. Linguistic background is "
    "similar. Pitch is somewhat different. Timbral brightness is similar.\n"
    "\n"
    "DECISION:\n"
    "Environmental mismatch or degradation is present, so the speaker-relevant "
    "vocal cues are partially degraded. Across the speaker profile, many "
    "attributes are similar. However, the latent speaker-identity cues show "
    "stronger separation. Taken together, the recordings are determined to be "
    "from different speakers.\n";

inline const std::string kExample3 =
    "ENVIRONMENT_STATUS:\n"
    "The first recording contains severe noise and heavy reverberation. "
    "The second recording contains severe noise and heavy reverberation.\n"
    "\n"
    "PROFILE_COMPATIBILITY:\n"
    "Gender is similar. The age ranges are very different. Linguistic background "
    "is similar. Pitch is very different. Timbral brightness is somewhat "
    "different.\n"
    "\n"
    "DECISION:\n"
    "Strong environmental mismatch or severe degradation substantially weakens "
    "the speaker-relevant vocal cues. Across the speaker profile, several "
    "attributes differ. Likewise, the latent speaker-identity cues also show "
    "clear differences. Taken together, the recordings are determined to be "
    "from different speakers.\n";

inline svr::SpeakerProfile base_profile(const std::string& id) {
  svr::SpeakerProfile p;
  p.utterance_id = id;
  p.gender = svr::GenderLabel::male;
  p.age = svr::AgeBin::y26_35;
  p.region = svr::RegionClass::north_american;
  p.pitch = svr::PitchClass::normal;
  p.brightness = svr::BrightnessClass::neutral;
  return p;
}

inline svr::TrialRecord example1_trial() {
  svr::TrialRecord t;
  t.trial_id = "golden-1";
  t.utt1 = "a";
  t.utt2 = "b";
  t.gt_label = svr::Verdict::same;
  t.profile1 = base_profile("a");
  t.profile2 = base_profile("b");
  t.env1 = {};  // clean, minimal
  t.env2.noise = svr::NoiseClass::mild;
  t.env2.reverb = svr::ReverbClass::slight;
  return t;
}

inline svr::TrialRecord example2_trial() {
  svr::TrialRecord t;
  t.trial_id = "golden-2";
  t.utt1 = "a";
  t.utt2 = "b";
  t.gt_label = svr::Verdict::different;
  t.profile1 = base_profile("a");
  t.profile2 = base_profile("b");
  t.profile2.pitch = svr::PitchClass::high;  // adjacent: partial
  t.env1.noise = svr::NoiseClass::moderate;
  t.env1.reverb = svr::ReverbClass::slight;
  t.env2.noise = svr::NoiseClass::mild;
  t.env2.reverb = svr::ReverbClass::moderate;
  return t;
}

inline svr::TrialRecord example3_trial() {
  svr::TrialRecord t;
  t.trial_id = "golden-3";
  t.utt1 = "a";
  t.utt2 = "b";
  t.gt_label = svr::Verdict::different;
  t.profile1 = base_profile("a");
  t.profile2 = base_profile("b");
  t.profile2.age = svr::AgeBin::y56_65;             // gap 3: conflicting
  t.profile2.pitch = svr::PitchClass::very_low;     // gap 2: conflicting
  t.profile2.brightness = svr::BrightnessClass::bright;  // adjacent: partial
  t.env1.noise = svr::NoiseClass::severe;
  t.env1.reverb = svr::ReverbClass::heavy;
  t.env2.noise = svr::NoiseClass::severe;
  t.env2.reverb = svr::ReverbClass::heavy;
  return t;
}

}  // namespace golden
