// pulselab - baseband pulse-shaping and modulation quality laboratory
// Copyright (C) 2026 The pulselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "pulselab/signal.hpp"

namespace pulselab {

inline constexpr int kCaptureFormatVersion = 1;

/// Sidecar fields of a capture. The payload is interleaved I,Q little-endian
/// float32, so its size is 8 * n_samples bytes.
struct CaptureInfo {
    double sample_rate_hz = 0.0;
    std::size_t n_samples = 0;
    std::string description;
    std::string created_by;
    int format_version = kCaptureFormatVersion;
};

/// Sidecar path: payload path with the extension replaced by ".json".
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& payload);

void write_capture(const std::filesystem::path& payload, const IqSignal& signal, const std::string& description);

struct Capture {
    IqSignal signal;
    CaptureInfo info;
};

/// Throws IoError when files are unreadable and CorruptData when the payload
/// size or sidecar contents disagree.
[[nodiscard]] Capture read_capture(const std::filesystem::path& payload);

} // namespace pulselab
