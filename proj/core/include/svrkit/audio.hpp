#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace svr {

inline constexpr int kMinSampleRate = 8000;

/// Mono waveform, samples nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 0;

  bool empty() const noexcept { return samples.empty(); }
  std::size_t size() const noexcept { return samples.size(); }
  double duration_s() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Throws ErrorCode::configuration unless the waveform is non-empty mono
/// audio at >= 8 kHz.
void validate_waveform(const Waveform& w);

double signal_energy(std::span<const float> samples) noexcept;
float peak_amplitude(std::span<const float> samples) noexcept;

/// Reads a RIFF/WAVE file. Accepts 16-bit integer PCM and 32-bit float PCM;
/// multi-channel input is downmixed to mono by channel averaging.
Waveform read_wav(const std::filesystem::path& path);

/// Writes mono 16-bit integer PCM.
void write_wav(const std::filesystem::path& path, const Waveform& w);

}  // namespace svr
