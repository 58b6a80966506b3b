#include <benchmark/benchmark.h>

#include "svrkit/compose.hpp"
#include "svrkit/descriptors.hpp"
#include "svrkit/environment.hpp"
#include "svrkit/evaluate.hpp"
#include "test_util.hpp"

namespace {

using namespace svr;

void BM_EstimateMeanF0(benchmark::State& state) {
  const Waveform w = testutil::make_harmonic(150.0, 6, 3.0, 16000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_mean_f0(w));
  }
}
BENCHMARK(BM_EstimateMeanF0)->Unit(benchmark::kMillisecond);

void BM_SpectralCentroid(benchmark::State& state) {
  const Waveform w = testutil::make_harmonic(150.0, 6, 3.0, 16000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_spectral_centroid(w));
  }
}
BENCHMARK(BM_SpectralCentroid)->Unit(benchmark::kMillisecond);

void BM_EstimateRt60(benchmark::State& state) {
  const Waveform rir = testutil::make_exp_rir(0.8, 1.2, 16000, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_rt60(rir));
  }
}
BENCHMARK(BM_EstimateRt60)->Unit(benchmark::kMillisecond);

void BM_ConvolveRir(benchmark::State& state) {
  const Waveform speech = testutil::make_harmonic(140.0, 5, 5.0, 16000);
  const Waveform rir = testutil::make_exp_rir(0.6, 1.0, 16000, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_rir(speech, rir));
  }
}
BENCHMARK(BM_ConvolveRir)->Unit(benchmark::kMillisecond);

TrialRecord bench_trial() {
  TrialRecord t;
  t.trial_id = "bench";
  t.gt_label = Verdict::different;
  const auto fill = [](SpeakerProfile& p, int shift) {
    p.gender = GenderLabel::female;
    p.age = static_cast<AgeBin>(4 + shift);
    p.region = RegionClass::european;
    p.pitch = static_cast<PitchClass>(2 + shift);
    p.brightness = static_cast<BrightnessClass>(2);
  };
  fill(t.profile1, 0);
  fill(t.profile2, 1);
  t.env1.noise = NoiseClass::moderate;
  t.env2.reverb = ReverbClass::heavy;
  return t;
}

void BM_RenderSvrTarget(benchmark::State& state) {
  const TrialRecord trial = bench_trial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(render_svr_target(trial));
  }
}
BENCHMARK(BM_RenderSvrTarget);

void BM_ParseSvrTrace(benchmark::State& state) {
  const std::string text = render_svr_target(bench_trial()).text();
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_svr_trace(text));
  }
}
BENCHMARK(BM_ParseSvrTrace);

void BM_ComputeSupport(benchmark::State& state) {
  const TrialRecord trial = bench_trial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_support(trial.profile1, trial.profile2));
  }
}
BENCHMARK(BM_ComputeSupport);

}  // namespace

BENCHMARK_MAIN();
