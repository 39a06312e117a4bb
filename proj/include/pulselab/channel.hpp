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

#include <cstdint>
#include <optional>
#include <string>

#include "pulselab/signal.hpp"

namespace pulselab {

/// Generator and Gaussian draw used by awgn(); recorded in run metadata.
inline constexpr const char* kRngId = "mt19937_64/std::normal_distribution(libstdc++ polar)";

struct ChannelConfig {
    /// Eb/N0 in dB at the matched-filter decision point; nullopt means noiseless.
    std::optional<double> ebn0_db;
    int bits_per_symbol = 2;
    int samples_per_symbol = 1;
    std::uint64_t seed = 0;
    std::string rng_id = kRngId;
};

/// Complex noise variance per sample: P * sps / (bits_per_symbol * 10^(Eb/N0 / 10)).
[[nodiscard]] double noise_variance(const ChannelConfig& config, double signal_power);

/// Adds circular complex Gaussian noise, half the variance on each rail.
[[nodiscard]] IqSignal awgn(const IqSignal& signal, const ChannelConfig& config, double signal_power);

/// Multiplies every sample by gain * exp(j * phase_deg).
[[nodiscard]] IqSignal impair(const IqSignal& signal, double gain, double phase_deg);

/// splitmix64 mix of (master, index); used to give each sweep point its own stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

} // namespace pulselab
