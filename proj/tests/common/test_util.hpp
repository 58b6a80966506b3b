#pragma once

// Shared fixtures for the test suites: synthetic signals, temp directories,
// and small file helpers.

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "svrkit/audio.hpp"
#include "svrkit/rng.hpp"

namespace testutil {

inline svr::Waveform make_sine(double freq_hz, double seconds, int sample_rate,
                               double amplitude = 0.5) {
  svr::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / sample_rate));
  }
  return w;
}

/// Harmonic tone with 1/k amplitude rolloff, resembling a voiced source.
inline svr::Waveform make_harmonic(double f0_hz, int harmonics, double seconds,
                                   int sample_rate, double amplitude = 0.3) {
  svr::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 1; k <= harmonics; ++k) {
      if (f0_hz * k >= sample_rate / 2.0) break;
      s += std::sin(2.0 * std::numbers::pi * f0_hz * k * i / sample_rate) / k;
    }
    w.samples[i] = static_cast<float>(amplitude * s);
  }
  return w;
}

inline svr::Waveform make_noise(double seconds, int sample_rate, std::uint64_t seed,
                                double amplitude = 0.3) {
  svr::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  w.samples.resize(n);
  svr::Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(amplitude * (2.0 * rng.next_double() - 1.0));
  }
  return w;
}

/// Noise under an exponential envelope whose energy decay has the analytic
/// RT60 = 3 * ln(10) * tau.
inline svr::Waveform make_exp_rir(double rt60_s, double seconds, int sample_rate,
                                  std::uint64_t seed) {
  const double tau = rt60_s / (3.0 * std::log(10.0));
  svr::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  w.samples.resize(n);
  svr::Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double noise = 2.0 * rng.next_double() - 1.0;
    w.samples[i] = static_cast<float>(std::exp(-t / tau) * noise);
  }
  return w;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("svrkit_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace testutil
