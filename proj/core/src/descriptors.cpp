#include "svrkit/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "svrkit/error.hpp"

namespace svr {

namespace {

constexpr double kFrameEnergyFloor = 1e-10;

/// YIN cumulative mean normalized difference over one frame.
/// frame must hold at least window + tau_max samples.
std::optional<double> frame_f0(std::span<const float> frame, int window, int tau_min,
                               int tau_max, double threshold, int sample_rate) {
  double energy = 0.0;
  for (int j = 0; j < window; ++j) energy += static_cast<double>(frame[j]) * frame[j];
  if (energy < kFrameEnergyFloor) return std::nullopt;

  std::vector<double> diff(static_cast<std::size_t>(tau_max) + 1, 0.0);
  for (int tau = 1; tau <= tau_max; ++tau) {
    double d = 0.0;
    for (int j = 0; j < window; ++j) {
      const double delta = static_cast<double>(frame[j]) - frame[j + tau];
      d += delta * delta;
    }
    diff[tau] = d;
  }

  std::vector<double> cmndf(diff.size(), 1.0);
  double running = 0.0;
  for (int tau = 1; tau <= tau_max; ++tau) {
    running += diff[tau];
    cmndf[tau] = running > 0.0 ? diff[tau] * tau / running : 1.0;
  }

  int tau = -1;
  for (int t = tau_min; t <= tau_max; ++t) {
    if (cmndf[t] < threshold) {
      tau = t;
      while (tau + 1 <= tau_max && cmndf[tau + 1] < cmndf[tau]) ++tau;
      break;
    }
  }
  if (tau < 0) return std::nullopt;

  // Parabolic interpolation around the minimum for sub-sample lag precision.
  double refined = tau;
  if (tau > 1 && tau < tau_max) {
    const double a = cmndf[tau - 1];
    const double b = cmndf[tau];
    const double c = cmndf[tau + 1];
    const double denom = a - 2.0 * b + c;
    if (std::abs(denom) > 1e-12) {
      refined = tau + 0.5 * (a - c) / denom;
    }
  }
  return sample_rate / refined;
}

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
  }
  return w;
}

}  // namespace

std::optional<double> estimate_mean_f0(const Waveform& w, const F0Config& cfg) {
  validate_waveform(w);
  const int sr = w.sample_rate;
  const int frame = cfg.frame_size;
  const int window = frame / 2;
  const int tau_min = std::max(2, static_cast<int>(std::floor(sr / cfg.max_hz)));
  const int tau_max =
      std::min(static_cast<int>(std::ceil(sr / cfg.min_hz)), window - 1);
  if (tau_min >= tau_max) return std::nullopt;

  const std::size_t n = w.samples.size();
  double sum = 0.0;
  std::size_t voiced = 0;
  for (std::size_t start = 0; start + frame <= n; start += cfg.hop) {
    const std::span<const float> fr(w.samples.data() + start,
                                    static_cast<std::size_t>(frame));
    const auto f0 = frame_f0(fr, window, tau_min, tau_max, cfg.difference_threshold, sr);
    if (f0 && *f0 >= cfg.min_hz && *f0 <= cfg.max_hz) {
      sum += *f0;
      ++voiced;
    }
  }
  if (voiced == 0) return std::nullopt;
  return sum / static_cast<double>(voiced);
}

double mean_spectral_centroid(const Waveform& w) {
  validate_waveform(w);
  constexpr int kFrame = 1024;
  constexpr int kHop = 512;
  static const std::vector<double> kWindow = hann_window(kFrame);

  const std::size_t n = w.samples.size();
  const double bin_hz = static_cast<double>(w.sample_rate) / kFrame;

  double centroid_sum = 0.0;
  std::size_t frames_used = 0;
  std::vector<std::complex<double>> buf(kFrame);
  // Complete frames only; a signal shorter than one frame becomes a single
  // zero-padded frame.
  const std::size_t last_start = n >= kFrame ? n - kFrame : 0;
  for (std::size_t start = 0; start <= last_start; start += kHop) {
    for (int i = 0; i < kFrame; ++i) {
      const std::size_t idx = start + i;
      const double s = idx < n ? w.samples[idx] : 0.0;
      buf[i] = s * kWindow[i];
    }
    detail::fft_inplace(buf, false);

    double mag_sum = 0.0;
    double weighted = 0.0;
    for (int k = 0; k <= kFrame / 2; ++k) {
      const double mag = std::abs(buf[k]);
      mag_sum += mag;
      weighted += mag * (k * bin_hz);
    }
    if (mag_sum > 1e-12) {
      centroid_sum += weighted / mag_sum;
      ++frames_used;
    }
  }

  if (frames_used == 0) {
    throw Error(ErrorCode::degenerate_signal,
                "all-zero waveform has no spectral centroid");
  }
  return centroid_sum / static_cast<double>(frames_used);
}

DescriptorResult extract_descriptors(const Waveform& w) {
  DescriptorResult r;
  r.mean_centroid = mean_spectral_centroid(w);
  r.mean_f0 = estimate_mean_f0(w);
  r.f0_failed = !r.mean_f0.has_value();
  return r;
}

PercentileCutoffs fit_cutoffs(std::vector<double> values) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.size() < 10) {
    throw Error(ErrorCode::insufficient_data,
                "cutoff fitting needs at least 10 finite values, got " +
                    std::to_string(values.size()));
  }
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  const auto nearest_rank = [&](double p) {
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return values[rank - 1];
  };
  return PercentileCutoffs{nearest_rank(10), nearest_rank(30), nearest_rank(70),
                           nearest_rank(90)};
}

int cutoff_bin_index(double value, const PercentileCutoffs& c) noexcept {
  if (value < c.c10) return 0;
  if (value < c.c30) return 1;
  if (value < c.c70) return 2;
  if (value < c.c90) return 3;
  return 4;
}

PitchClass bin_pitch(double f0_hz, GenderLabel gender, const GenderCutoffs& cutoffs) {
  const auto& c = gender == GenderLabel::male ? cutoffs.male : cutoffs.female;
  if (!c) {
    throw Error(ErrorCode::configuration,
                std::string("no pitch cutoffs fitted for gender ") +
                    std::string(to_string(gender)));
  }
  return static_cast<PitchClass>(cutoff_bin_index(f0_hz, *c));
}

BrightnessClass bin_brightness(double centroid_hz, const PercentileCutoffs& cutoffs) {
  return static_cast<BrightnessClass>(cutoff_bin_index(centroid_hz, cutoffs));
}

void write_cutoffs_file(const std::filesystem::path& path, const CutoffsRecord& rec) {
  std::ostringstream out;
  char buf[64];
  out << "svrkit-cutoffs " << rec.version << "\n";
  out << "corpus " << rec.corpus << "\n";
  out << "group " << rec.group << "\n";
  out << "count " << rec.sample_count << "\n";
  const auto put = [&](const char* name, double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << name << " " << buf << "\n";
  };
  put("c10", rec.cutoffs.c10);
  put("c30", rec.cutoffs.c30);
  put("c70", rec.cutoffs.c70);
  put("c90", rec.cutoffs.c90);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw Error(ErrorCode::io, "cannot write cutoffs file: " + path.string());
  }
  const std::string s = out.str();
  f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

CutoffsRecord read_cutoffs_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw Error(ErrorCode::io, "cannot open cutoffs file: " + path.string());
  }
  CutoffsRecord rec;
  std::string key;
  if (!(f >> key >> rec.version) || key != "svrkit-cutoffs") {
    throw Error(ErrorCode::parse, "bad cutoffs header in " + path.string());
  }
  bool have[4] = {false, false, false, false};
  while (f >> key) {
    if (key == "corpus") {
      f >> rec.corpus;
    } else if (key == "group") {
      f >> rec.group;
    } else if (key == "count") {
      f >> rec.sample_count;
    } else if (key == "c10") {
      f >> rec.cutoffs.c10;
      have[0] = true;
    } else if (key == "c30") {
      f >> rec.cutoffs.c30;
      have[1] = true;
    } else if (key == "c70") {
      f >> rec.cutoffs.c70;
      have[2] = true;
    } else if (key == "c90") {
      f >> rec.cutoffs.c90;
      have[3] = true;
    } else {
      throw Error(ErrorCode::parse, "unknown cutoffs key '" + key + "' in " + path.string());
    }
  }
  if (!(have[0] && have[1] && have[2] && have[3])) {
    throw Error(ErrorCode::parse, "cutoffs file missing percentile entries: " + path.string());
  }
  return rec;
}

}  // namespace svr
