#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svrkit/audio.hpp"
#include "svrkit/rng.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

int degradation_rank(NoiseClass c) noexcept;
int degradation_rank(ReverbClass c) noexcept;

/// Per-utterance recording-condition labels plus provenance. clean/minimal
/// mean no factor was applied or the controlled value fell in the top class.
struct EnvironmentLabels {
  NoiseClass noise = NoiseClass::clean;
  ReverbClass reverb = ReverbClass::minimal;
  std::optional<double> target_snr_db;
  std::optional<double> rt60_s;
};

/// Degradation rank of one recording: max of its noise and reverb ranks.
int recording_rank(const EnvironmentLabels& env) noexcept;

struct PairSeverity {
  SeverityLevel level = SeverityLevel::low;
  int pair_rank = 0;
};

/// Max degradation rank over the two recordings; 0-1 low, 2 moderate,
/// 3-4 extreme.
PairSeverity pair_severity(const EnvironmentLabels& a, const EnvironmentLabels& b) noexcept;

NoiseClass snr_to_noise_class(double snr_db) noexcept;
ReverbClass rt60_to_reverb_class(double rt60_s) noexcept;

/// Scale for the noise waveform so that 10*log10(E_speech / E_scaled_noise)
/// over the mixed region equals the target. Both signals must be non-silent
/// and the noise at least as long as the speech.
double solve_noise_scale(const Waveform& speech, const Waveform& noise,
                         double target_snr_db);

struct MixResult {
  Waveform audio;
  std::size_t clipped_samples = 0;
  bool clip_warning = false;  // >1% of samples clipped
};

/// Samplewise speech + scale*noise, hard-clipped to [-1, 1] with the clip
/// count reported.
MixResult mix_noise(const Waveform& speech, const Waveform& noise, double scale);

/// Forward SNR of the mix components, for verification.
double measured_snr_db(const Waveform& speech, const Waveform& noise, double scale);

/// Fits the noise to the requested length: longer noise is randomly windowed,
/// shorter noise is tiled from a random circular offset.
Waveform prepare_noise(const Waveform& noise, std::size_t length, Rng& rng);

/// Broadband RT60 from a room impulse response via Schroeder backward
/// integration: least-squares line on the -5..-35 dB region of the energy
/// decay curve, extrapolated to 60 dB. Throws ErrorCode::insufficient_decay
/// when the curve never reaches -35 dB inside the response (e.g. an ideal
/// impulse); callers map that to class minimal.
double estimate_rt60(const Waveform& rir);

/// Full linear convolution truncated to the speech length and peak-normalized
/// to the input peak.
Waveform convolve_rir(const Waveform& speech, const Waveform& rir);

struct AugmentationPlan {
  CorpusKind corpus_kind = CorpusKind::voxceleb_like;
  bool apply_noise = false;
  bool apply_reverb = false;
  std::optional<double> target_snr_db;     // present iff apply_noise
  std::optional<std::string> noise_id;     // present iff apply_noise
  std::optional<std::string> rir_id;       // present iff apply_reverb
};

/// Samples one plan. voxceleb-like applies noise and reverb independently
/// with p=0.5 each; libritts-like draws mutually exclusive
/// {noise-only 0.3, reverb-only 0.3, joint 0.3, clean 0.1}. A noisy plan
/// first picks a class uniformly from {mild, moderate, severe, extreme}, then
/// an SNR uniformly inside that class interval (extreme uses [-5, 0)).
/// Bank ids are drawn uniformly; an empty bank when required is a
/// configuration error.
AugmentationPlan sample_augmentation(CorpusKind kind, Rng& rng,
                                     std::span<const std::string> noise_ids,
                                     std::span<const std::string> rir_ids);

/// Read-only bank of noise waveforms, loaded from an `id<TAB>path` index file
/// (paths relative to the index) or by scanning a directory of WAV files.
class NoiseBank {
 public:
  static NoiseBank load(const std::filesystem::path& index_or_dir);

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const Waveform& get(const std::string& id) const;
  bool empty() const noexcept { return ids_.empty(); }

 private:
  std::vector<std::string> ids_;
  std::vector<Waveform> audio_;
};

/// Read-only bank of room impulse responses with cached RT60. The index file
/// is `id<TAB>path[<TAB>rt60]`; a missing RT60 column is estimated at load
/// time (insufficient-decay responses cache no RT60 and label as minimal).
class RirBank {
 public:
  struct Entry {
    Waveform audio;
    std::optional<double> rt60_s;
  };

  static RirBank load(const std::filesystem::path& index_or_dir);

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const Entry& get(const std::string& id) const;
  bool empty() const noexcept { return ids_.empty(); }

 private:
  std::vector<std::string> ids_;
  std::vector<Entry> entries_;
};

struct AppliedEnvironment {
  Waveform audio;
  EnvironmentLabels labels;
  std::size_t clipped_samples = 0;
  bool clip_warning = false;
};

/// Applies a plan: reverberation is convolved first, then noise is mixed at
/// the plan's target SNR. Labels come from the plan's target SNR and the
/// RIR's cached RT60; the clean path returns the audio unchanged with
/// (clean, minimal).
AppliedEnvironment apply_plan(const Waveform& speech, const AugmentationPlan& plan,
                              const NoiseBank& noise_bank, const RirBank& rir_bank,
                              Rng& rng);

enum class CropMode { train, eval };

struct CropResult {
  Waveform audio;
  std::size_t start_sample = 0;
  bool short_input = false;  // train-mode input shorter than 3 s, returned whole
};

/// train: uniform random duration in [3, 15] s at a random offset; eval:
/// center 15 s when longer, otherwise the full utterance.
CropResult crop_window(const Waveform& w, CropMode mode, Rng& rng);

}  // namespace svr
