// src/wav.cc

// Copyright 2026  dpa authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "dpa/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "dpa/error.h"

namespace dpa {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void push_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void push_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void push_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

double decode_sample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits,
                     const std::string& path) {
  if (format == kFormatFloat) {
    std::uint32_t raw = read_u32(p);
    float v = std::bit_cast<float>(raw);
    if (!std::isfinite(v)) throw DataError("malformed wav: non-finite sample in " + path);
    return std::clamp(static_cast<double>(v), -1.0, 1.0);
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      auto v = static_cast<std::int16_t>(read_u16(p));
      return v / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
      if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
      return v / 8388608.0;
    }
    case 32: {
      auto v = static_cast<std::int32_t>(read_u32(p));
      return v / 2147483648.0;
    }
    default:
      throw DataError("unsupported codec: " + std::to_string(bits) + "-bit PCM in " + path);
  }
}

}  // namespace

AudioClip load_wav(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open wav file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("malformed wav: missing RIFF/WAVE header in " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_offset = 0, data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    std::uint32_t chunk_size = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw DataError("malformed wav: truncated chunk in " + path);
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw DataError("malformed wav: short fmt chunk in " + path);
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      sample_rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk_size;
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }

  if (!have_fmt || !have_data) {
    throw DataError("malformed wav: missing fmt or data chunk in " + path);
  }
  if (format == kFormatExtensible) {
    throw DataError("unsupported codec: WAVE_FORMAT_EXTENSIBLE in " + path);
  }
  if (format != kFormatPcm && format != kFormatFloat) {
    throw DataError("unsupported codec: format tag " + std::to_string(format) + " in " + path);
  }
  if (format == kFormatFloat && bits != 32) {
    throw DataError("unsupported codec: " + std::to_string(bits) + "-bit float in " + path);
  }
  if (format == kFormatPcm && bits != 8 && bits != 16 && bits != 24 && bits != 32) {
    throw DataError("unsupported codec: " + std::to_string(bits) + "-bit PCM in " + path);
  }
  if (channels == 0 || sample_rate == 0) {
    throw DataError("malformed wav: zero channels or sample rate in " + path);
  }
  if (data_size == 0) throw DataError("empty audio: zero-length data chunk in " + path);

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_size = bytes_per_sample * channels;
  if (data_size % frame_size != 0) {
    throw DataError("malformed wav: data size not a whole number of frames in " + path);
  }
  const std::size_t frames = data_size / frame_size;

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(sample_rate);
  clip.source_id = path;
  clip.samples.resize(frames);
  const std::uint8_t* data = bytes.data() + data_offset;
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      acc += decode_sample(data + f * frame_size + c * bytes_per_sample, format, bits, path);
    }
    clip.samples[f] = static_cast<float>(acc / channels);
  }
  return clip;
}

void write_wav(const std::string& path, const AudioClip& clip, WavEncoding encoding) {
  if (clip.samples.empty()) throw DataError("write_wav: refusing to write an empty clip");
  if (clip.sample_rate_hz <= 0) throw ConfigError("write_wav: sample rate must be positive");

  std::uint16_t bits = 16, format = kFormatPcm;
  switch (encoding) {
    case WavEncoding::kPcm8: bits = 8; break;
    case WavEncoding::kPcm16: bits = 16; break;
    case WavEncoding::kPcm24: bits = 24; break;
    case WavEncoding::kPcm32: bits = 32; break;
    case WavEncoding::kFloat32: bits = 32; format = kFormatFloat; break;
  }
  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t data_size = clip.samples.size() * bytes_per_sample;
  const bool with_fact = format == kFormatFloat;

  std::vector<std::uint8_t> out;
  out.reserve(60 + data_size);
  push_tag(out, "RIFF");
  std::uint32_t riff_size = 4 + 24 + (with_fact ? 12 : 0) + 8 + static_cast<std::uint32_t>(data_size);
  push_u32(out, riff_size);
  push_tag(out, "WAVE");
  push_tag(out, "fmt ");
  push_u32(out, 16);
  push_u16(out, format);
  push_u16(out, 1);  // mono
  push_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz));
  push_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz * bytes_per_sample));
  push_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
  push_u16(out, bits);
  if (with_fact) {
    push_tag(out, "fact");
    push_u32(out, 4);
    push_u32(out, static_cast<std::uint32_t>(clip.samples.size()));
  }
  push_tag(out, "data");
  push_u32(out, static_cast<std::uint32_t>(data_size));

  for (float sample : clip.samples) {
    if (format == kFormatFloat) {
      push_u32(out, std::bit_cast<std::uint32_t>(sample));
      continue;
    }
    const double full_scale = std::ldexp(1.0, bits - 1);
    auto q = static_cast<std::int64_t>(std::llround(static_cast<double>(sample) * full_scale));
    q = std::clamp<std::int64_t>(q, -static_cast<std::int64_t>(full_scale),
                                 static_cast<std::int64_t>(full_scale) - 1);
    switch (bits) {
      case 8:
        out.push_back(static_cast<std::uint8_t>(q + 128));
        break;
      case 16:
        push_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
        break;
      case 24: {
        auto v = static_cast<std::uint32_t>(static_cast<std::int32_t>(q));
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        break;
      }
      case 32:
        push_u32(out, static_cast<std::uint32_t>(static_cast<std::int32_t>(q)));
        break;
    }
  }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw DataError("cannot write wav file: " + tmp);
    file.write(reinterpret_cast<const char*>(out.data()),
               static_cast<std::streamsize>(out.size()));
    if (!file) throw DataError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dpa
