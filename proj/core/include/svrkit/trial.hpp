#pragma once

#include <optional>
#include <string>

#include "svrkit/environment.hpp"
#include "svrkit/profile.hpp"
#include "svrkit/support.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

/// An utterance pair with its ground-truth same/different label: the unit of
/// pair-task generation and of evaluation. gt_label comes from the trial
/// list, never from profile evidence. The cached fields are recomputable from
/// the constituents.
struct TrialRecord {
  std::string trial_id;
  std::string utt1;
  std::string utt2;
  Verdict gt_label = Verdict::same;
  SpeakerProfile profile1;
  SpeakerProfile profile2;
  EnvironmentLabels env1;
  EnvironmentLabels env2;
  std::optional<SupportAssessment> support;
  std::optional<PairSeverity> severity;
};

}  // namespace svr
