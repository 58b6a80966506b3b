#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "svrkit/audio.hpp"
#include "svrkit/taxonomy.hpp"

namespace svr {

/// Per-utterance acoustic descriptors. mean_f0 is absent exactly when F0
/// extraction found no voiced frame (f0_failed); such utterances stay usable
/// for tasks that do not need pitch or brightness conditioning.
struct DescriptorResult {
  std::optional<double> mean_f0;
  double mean_centroid = 0.0;
  bool f0_failed = false;
};

struct F0Config {
  int frame_size = 2048;
  int hop = 512;
  double difference_threshold = 0.15;
  double min_hz = 50.0;
  double max_hz = 600.0;
};

/// Mean fundamental frequency over voiced frames, using a time-domain
/// difference-function (YIN-style) estimator. Returns nullopt when no frame
/// is voiced; extraction failure is a value, not an error.
std::optional<double> estimate_mean_f0(const Waveform& w, const F0Config& cfg = {});

/// Amplitude-weighted mean frequency per STFT frame (1024-point Hann, hop
/// 512), averaged over frames with non-zero energy. Throws
/// ErrorCode::degenerate_signal for an all-zero waveform.
double mean_spectral_centroid(const Waveform& w);

DescriptorResult extract_descriptors(const Waveform& w);

/// Empirical 10/30/70/90 percentile cutoffs, nearest-rank convention.
struct PercentileCutoffs {
  double c10 = 0.0;
  double c30 = 0.0;
  double c70 = 0.0;
  double c90 = 0.0;
};

/// Fits nearest-rank percentile cutoffs. Non-finite values are dropped;
/// fewer than 10 usable values throws ErrorCode::insufficient_data.
PercentileCutoffs fit_cutoffs(std::vector<double> values);

/// Half-open interval lookup: [<c10, [c10,c30), [c30,c70), [c70,c90), >=c90]
/// mapping to ordinal indices 0..4.
int cutoff_bin_index(double value, const PercentileCutoffs& c) noexcept;

struct GenderCutoffs {
  std::optional<PercentileCutoffs> male;
  std::optional<PercentileCutoffs> female;
};

/// Gender-conditioned pitch class. Throws ErrorCode::configuration when the
/// cutoffs for the requested gender are missing.
PitchClass bin_pitch(double f0_hz, GenderLabel gender, const GenderCutoffs& cutoffs);

BrightnessClass bin_brightness(double centroid_hz, const PercentileCutoffs& cutoffs);

/// Cutoff persistence: a small versioned text record per corpus+group.
struct CutoffsRecord {
  int version = 1;
  std::string corpus;
  std::string group;  // "male", "female" or "pooled"
  std::size_t sample_count = 0;
  PercentileCutoffs cutoffs;
};

void write_cutoffs_file(const std::filesystem::path& path, const CutoffsRecord& rec);
CutoffsRecord read_cutoffs_file(const std::filesystem::path& path);

}  // namespace svr
