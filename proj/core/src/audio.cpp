#include "svrkit/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "svrkit/error.hpp"

namespace svr {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

void validate_waveform(const Waveform& w) {
  if (w.empty()) {
    throw Error(ErrorCode::configuration, "waveform is empty");
  }
  if (w.sample_rate < kMinSampleRate) {
    throw Error(ErrorCode::configuration,
                "sample rate " + std::to_string(w.sample_rate) +
                    " below minimum 8000 Hz");
  }
}

double signal_energy(std::span<const float> samples) noexcept {
  double e = 0.0;
  for (float s : samples) e += static_cast<double>(s) * s;
  return e;
}

float peak_amplitude(std::span<const float> samples) noexcept {
  float peak = 0.0f;
  for (float s : samples) peak = std::max(peak, std::abs(s));
  return peak;
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open wav file: " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  if (n < 12 || std::memcmp(data, "RIFF", 4) != 0 || std::memcmp(data + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::parse, "not a RIFF/WAVE file: " + path.string());
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* pcm = nullptr;
  std::size_t pcm_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= n) {
    const std::uint32_t chunk_size = read_u32(data + pos + 4);
    const unsigned char* body = data + pos + 8;
    if (pos + 8 + chunk_size > n) {
      throw Error(ErrorCode::parse, "truncated wav chunk in " + path.string());
    }
    if (std::memcmp(data + pos, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw Error(ErrorCode::parse, "short fmt chunk in " + path.string());
      }
      format = read_u16(body);
      channels = read_u16(body + 2);
      sample_rate = read_u32(body + 4);
      bits = read_u16(body + 14);
    } else if (std::memcmp(data + pos, "data", 4) == 0) {
      pcm = body;
      pcm_len = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (pcm == nullptr || channels == 0) {
    throw Error(ErrorCode::parse, "wav file missing fmt/data chunk: " + path.string());
  }
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorCode::parse,
                "unsupported wav encoding (need 16-bit PCM or 32-bit float): " +
                    path.string());
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t frames = pcm_len / frame_bytes;

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c) {
      const unsigned char* s = pcm + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        const auto v = static_cast<std::int16_t>(s[0] | s[1] << 8);
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v = 0.0f;
        std::uint32_t u = read_u32(s);
        std::memcpy(&v, &u, sizeof v);
        acc += v;
      }
    }
    w.samples[i] = static_cast<float>(acc / channels);
  }

  if (w.sample_rate < kMinSampleRate) {
    throw Error(ErrorCode::configuration,
                "wav sample rate below 8 kHz: " + path.string());
  }
  return w;
}

void write_wav(const std::filesystem::path& path, const Waveform& w) {
  validate_waveform(w);
  if (!path.parent_path().empty()) {
    std::filesystem::create_directories(path.parent_path());
  }
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);

  std::string out;
  out.reserve(44 + data_bytes);
  out.append("RIFF");
  put_u32(out, 36 + data_bytes);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // integer PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.append("data");
  put_u32(out, data_bytes);
  for (float s : w.samples) {
    const float clamped = std::clamp(s, -1.0f, 1.0f);
    const auto v = static_cast<std::int16_t>(std::lround(clamped * 32767.0f));
    put_u16(out, static_cast<std::uint16_t>(v));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw Error(ErrorCode::io, "cannot write wav file: " + path.string());
  }
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) {
    throw Error(ErrorCode::io, "short write to wav file: " + path.string());
  }
}

}  // namespace svr
