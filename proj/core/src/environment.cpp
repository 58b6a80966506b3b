#include "svrkit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fft.hpp"
#include "svrkit/error.hpp"

namespace svr {

namespace {

constexpr double kClipWarnFraction = 0.01;

void require_same_rate(const Waveform& a, const Waveform& b, const char* what) {
  if (a.sample_rate != b.sample_rate) {
    throw Error(ErrorCode::configuration,
                std::string(what) + ": sample rate mismatch (" +
                    std::to_string(a.sample_rate) + " vs " +
                    std::to_string(b.sample_rate) + ")");
  }
}

}  // namespace

int degradation_rank(NoiseClass c) noexcept { return static_cast<int>(c); }
int degradation_rank(ReverbClass c) noexcept { return static_cast<int>(c); }

int recording_rank(const EnvironmentLabels& env) noexcept {
  return std::max(degradation_rank(env.noise), degradation_rank(env.reverb));
}

PairSeverity pair_severity(const EnvironmentLabels& a, const EnvironmentLabels& b) noexcept {
  PairSeverity s;
  s.pair_rank = std::max(recording_rank(a), recording_rank(b));
  if (s.pair_rank <= 1) {
    s.level = SeverityLevel::low;
  } else if (s.pair_rank == 2) {
    s.level = SeverityLevel::moderate;
  } else {
    s.level = SeverityLevel::extreme;
  }
  return s;
}

NoiseClass snr_to_noise_class(double snr_db) noexcept {
  if (snr_db >= 20.0) return NoiseClass::clean;
  if (snr_db >= 10.0) return NoiseClass::mild;
  if (snr_db >= 5.0) return NoiseClass::moderate;
  if (snr_db >= 0.0) return NoiseClass::severe;
  return NoiseClass::extreme;
}

ReverbClass rt60_to_reverb_class(double rt60_s) noexcept {
  if (rt60_s <= 0.3) return ReverbClass::minimal;
  if (rt60_s <= 0.6) return ReverbClass::slight;
  if (rt60_s <= 1.0) return ReverbClass::moderate;
  if (rt60_s <= 1.5) return ReverbClass::heavy;
  return ReverbClass::extreme;
}

double solve_noise_scale(const Waveform& speech, const Waveform& noise,
                         double target_snr_db) {
  validate_waveform(speech);
  validate_waveform(noise);
  require_same_rate(speech, noise, "solve_noise_scale");
  if (noise.size() < speech.size()) {
    throw Error(ErrorCode::configuration,
                "noise shorter than speech; prepare_noise first");
  }
  const double e_speech = signal_energy(speech.samples);
  const double e_noise = signal_energy(
      std::span<const float>(noise.samples.data(), speech.size()));
  if (e_speech <= 0.0 || e_noise <= 0.0) {
    throw Error(ErrorCode::degenerate_signal,
                "silent speech or noise in SNR solve");
  }
  return std::sqrt(e_speech / (e_noise * std::pow(10.0, target_snr_db / 10.0)));
}

MixResult mix_noise(const Waveform& speech, const Waveform& noise, double scale) {
  validate_waveform(speech);
  validate_waveform(noise);
  require_same_rate(speech, noise, "mix_noise");
  if (noise.size() < speech.size()) {
    throw Error(ErrorCode::configuration,
                "noise shorter than speech; prepare_noise first");
  }
  MixResult out;
  out.audio.sample_rate = speech.sample_rate;
  out.audio.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    const double v = static_cast<double>(speech.samples[i]) +
                     scale * static_cast<double>(noise.samples[i]);
    double clipped = v;
    if (v > 1.0) {
      clipped = 1.0;
      ++out.clipped_samples;
    } else if (v < -1.0) {
      clipped = -1.0;
      ++out.clipped_samples;
    }
    out.audio.samples[i] = static_cast<float>(clipped);
  }
  out.clip_warning = static_cast<double>(out.clipped_samples) >
                     kClipWarnFraction * static_cast<double>(speech.size());
  return out;
}

double measured_snr_db(const Waveform& speech, const Waveform& noise, double scale) {
  const double e_speech = signal_energy(speech.samples);
  const double e_noise = signal_energy(
      std::span<const float>(noise.samples.data(), speech.size()));
  return 10.0 * std::log10(e_speech / (scale * scale * e_noise));
}

Waveform prepare_noise(const Waveform& noise, std::size_t length, Rng& rng) {
  validate_waveform(noise);
  Waveform out;
  out.sample_rate = noise.sample_rate;
  out.samples.resize(length);
  const std::size_t n = noise.size();
  if (n >= length) {
    const std::size_t offset = rng.uniform_index(n - length + 1);
    std::copy_n(noise.samples.begin() + static_cast<std::ptrdiff_t>(offset), length,
                out.samples.begin());
  } else {
    // Circular tiling from a random offset keeps energy statistics stationary.
    std::size_t src = rng.uniform_index(n);
    for (std::size_t i = 0; i < length; ++i) {
      out.samples[i] = noise.samples[src];
      if (++src == n) src = 0;
    }
  }
  return out;
}

double estimate_rt60(const Waveform& rir) {
  validate_waveform(rir);
  const std::size_t n = rir.size();
  if (rir.duration_s() < 0.1) {
    throw Error(ErrorCode::insufficient_decay,
                "impulse response shorter than 0.1 s");
  }

  // Schroeder backward integration of the squared response.
  std::vector<double> edc(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double s = static_cast<double>(rir.samples[i]);
    acc += s * s;
    edc[i] = acc;
  }
  const double total = edc[0];
  if (total <= 0.0) {
    throw Error(ErrorCode::degenerate_signal, "silent impulse response");
  }

  // Line fit on the -5..-35 dB region of the decay curve.
  const double sr = rir.sample_rate;
  double sum_t = 0.0, sum_l = 0.0, sum_tt = 0.0, sum_tl = 0.0;
  std::size_t count = 0;
  bool reached_floor = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (edc[i] <= 0.0) {
      reached_floor = true;
      break;
    }
    const double level_db = 10.0 * std::log10(edc[i] / total);
    if (level_db <= -35.0) {
      reached_floor = true;
      break;
    }
    if (level_db <= -5.0) {
      const double t = static_cast<double>(i) / sr;
      sum_t += t;
      sum_l += level_db;
      sum_tt += t * t;
      sum_tl += t * level_db;
      ++count;
    }
  }
  if (!reached_floor || count < 2) {
    throw Error(ErrorCode::insufficient_decay,
                "energy decay curve never spans the -5..-35 dB fit region");
  }

  const double denom = static_cast<double>(count) * sum_tt - sum_t * sum_t;
  if (denom <= 0.0) {
    throw Error(ErrorCode::insufficient_decay, "degenerate decay fit region");
  }
  const double slope = (static_cast<double>(count) * sum_tl - sum_t * sum_l) / denom;
  if (slope >= 0.0) {
    throw Error(ErrorCode::insufficient_decay, "non-decaying impulse response");
  }
  return -60.0 / slope;
}

Waveform convolve_rir(const Waveform& speech, const Waveform& rir) {
  validate_waveform(speech);
  validate_waveform(rir);
  require_same_rate(speech, rir, "convolve_rir");

  const auto conv = detail::convolve_full(speech.samples, rir.samples);
  Waveform out;
  out.sample_rate = speech.sample_rate;
  out.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    out.samples[i] = static_cast<float>(conv[i]);
  }

  const float in_peak = peak_amplitude(speech.samples);
  const float out_peak = peak_amplitude(out.samples);
  if (in_peak > 0.0f && out_peak > 0.0f) {
    const float gain = in_peak / out_peak;
    for (auto& s : out.samples) s *= gain;
  }
  return out;
}

AugmentationPlan sample_augmentation(CorpusKind kind, Rng& rng,
                                     std::span<const std::string> noise_ids,
                                     std::span<const std::string> rir_ids) {
  AugmentationPlan plan;
  plan.corpus_kind = kind;
  if (kind == CorpusKind::voxceleb_like) {
    plan.apply_noise = rng.bernoulli(0.5);
    plan.apply_reverb = rng.bernoulli(0.5);
  } else {
    const double u = rng.next_double();
    if (u < 0.3) {
      plan.apply_noise = true;
    } else if (u < 0.6) {
      plan.apply_reverb = true;
    } else if (u < 0.9) {
      plan.apply_noise = true;
      plan.apply_reverb = true;
    }
    // remaining 0.1: clean
  }

  if (plan.apply_noise) {
    // Class first (clean excluded while noise is applied), then an SNR
    // uniform inside the class interval.
    static constexpr double kIntervals[4][2] = {
        {10.0, 20.0},  // mild
        {5.0, 10.0},   // moderate
        {0.0, 5.0},    // severe
        {-5.0, 0.0},   // extreme
    };
    const auto k = rng.uniform_index(4);
    plan.target_snr_db = rng.uniform(kIntervals[k][0], kIntervals[k][1]);
    if (noise_ids.empty()) {
      throw Error(ErrorCode::configuration, "noise bank is empty but plan needs noise");
    }
    plan.noise_id = noise_ids[rng.uniform_index(noise_ids.size())];
  }
  if (plan.apply_reverb) {
    if (rir_ids.empty()) {
      throw Error(ErrorCode::configuration, "rir bank is empty but plan needs reverb");
    }
    plan.rir_id = rir_ids[rng.uniform_index(rir_ids.size())];
  }
  return plan;
}

namespace {

struct IndexEntry {
  std::string id;
  std::filesystem::path path;
  std::optional<double> rt60;
};

std::vector<IndexEntry> read_bank_index(const std::filesystem::path& index_or_dir) {
  namespace fs = std::filesystem;
  std::vector<IndexEntry> entries;
  if (fs::is_directory(index_or_dir)) {
    for (const auto& e : fs::directory_iterator(index_or_dir)) {
      if (e.path().extension() == ".wav") {
        entries.push_back({e.path().stem().string(), e.path(), std::nullopt});
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    return entries;
  }

  std::ifstream in(index_or_dir);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open bank index: " + index_or_dir.string());
  }
  const fs::path base = index_or_dir.parent_path();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    IndexEntry e;
    std::string path_str;
    if (!(std::getline(row, e.id, '\t') && std::getline(row, path_str, '\t'))) {
      throw Error(ErrorCode::parse, "bank index line " + std::to_string(lineno) +
                                        " needs id<TAB>path");
    }
    std::string rt60_str;
    if (std::getline(row, rt60_str, '\t') && !rt60_str.empty()) {
      e.rt60 = std::stod(rt60_str);
    }
    fs::path p(path_str);
    e.path = p.is_absolute() ? p : base / p;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

NoiseBank NoiseBank::load(const std::filesystem::path& index_or_dir) {
  NoiseBank bank;
  for (auto& e : read_bank_index(index_or_dir)) {
    bank.ids_.push_back(e.id);
    bank.audio_.push_back(read_wav(e.path));
  }
  return bank;
}

const Waveform& NoiseBank::get(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return audio_[i];
  }
  throw Error(ErrorCode::configuration, "noise bank has no entry '" + id + "'");
}

RirBank RirBank::load(const std::filesystem::path& index_or_dir) {
  RirBank bank;
  for (auto& e : read_bank_index(index_or_dir)) {
    Entry entry;
    entry.audio = read_wav(e.path);
    if (e.rt60) {
      entry.rt60_s = e.rt60;
    } else {
      try {
        entry.rt60_s = estimate_rt60(entry.audio);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::insufficient_decay) throw;
        entry.rt60_s = std::nullopt;  // labels as minimal
      }
    }
    bank.ids_.push_back(e.id);
    bank.entries_.push_back(std::move(entry));
  }
  return bank;
}

const RirBank::Entry& RirBank::get(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return entries_[i];
  }
  throw Error(ErrorCode::configuration, "rir bank has no entry '" + id + "'");
}

AppliedEnvironment apply_plan(const Waveform& speech, const AugmentationPlan& plan,
                              const NoiseBank& noise_bank, const RirBank& rir_bank,
                              Rng& rng) {
  AppliedEnvironment out;
  out.audio = speech;

  if (plan.apply_reverb) {
    const auto& entry = rir_bank.get(plan.rir_id.value());
    out.audio = convolve_rir(out.audio, entry.audio);
    out.labels.rt60_s = entry.rt60_s;
    out.labels.reverb = entry.rt60_s ? rt60_to_reverb_class(*entry.rt60_s)
                                     : ReverbClass::minimal;
  }
  if (plan.apply_noise) {
    const auto& noise = noise_bank.get(plan.noise_id.value());
    const Waveform prepared = prepare_noise(noise, out.audio.size(), rng);
    const double snr = plan.target_snr_db.value();
    const double scale = solve_noise_scale(out.audio, prepared, snr);
    MixResult mixed = mix_noise(out.audio, prepared, scale);
    out.audio = std::move(mixed.audio);
    out.clipped_samples = mixed.clipped_samples;
    out.clip_warning = mixed.clip_warning;
    out.labels.target_snr_db = snr;
    out.labels.noise = snr_to_noise_class(snr);
  }
  return out;
}

CropResult crop_window(const Waveform& w, CropMode mode, Rng& rng) {
  validate_waveform(w);
  const auto sr = static_cast<std::size_t>(w.sample_rate);
  const std::size_t n = w.size();
  CropResult out;
  out.audio.sample_rate = w.sample_rate;

  if (mode == CropMode::eval) {
    const std::size_t window = 15 * sr;
    if (n > window) {
      out.start_sample = (n - window) / 2;
      out.audio.samples.assign(
          w.samples.begin() + static_cast<std::ptrdiff_t>(out.start_sample),
          w.samples.begin() + static_cast<std::ptrdiff_t>(out.start_sample + window));
    } else {
      out.audio.samples = w.samples;
    }
    return out;
  }

  const std::size_t min_len = 3 * sr;
  if (n < min_len) {
    out.audio.samples = w.samples;
    out.short_input = true;
    return out;
  }
  const double max_dur = std::min(15.0, static_cast<double>(n) / static_cast<double>(sr));
  const double dur_s = rng.uniform(3.0, max_dur);
  auto len = static_cast<std::size_t>(std::llround(dur_s * static_cast<double>(sr)));
  len = std::clamp(len, min_len, n);
  out.start_sample = rng.uniform_index(n - len + 1);
  out.audio.samples.assign(
      w.samples.begin() + static_cast<std::ptrdiff_t>(out.start_sample),
      w.samples.begin() + static_cast<std::ptrdiff_t>(out.start_sample + len));
  return out;
}

}  // namespace svr
