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

#include "pulselab/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "pulselab/errors.hpp"

namespace pulselab {

double noise_variance(const ChannelConfig& config, double signal_power)
{
    if (!(signal_power > 0.0)) {
        throw InvalidArgument("signal power must be positive");
    }
    if (config.bits_per_symbol < 1 || config.samples_per_symbol < 1) {
        throw InvalidArgument("bits/symbol and samples/symbol must be >= 1");
    }
    if (!config.ebn0_db) {
        return 0.0;
    }
    return signal_power * config.samples_per_symbol /
           (config.bits_per_symbol * std::pow(10.0, *config.ebn0_db / 10.0));
}

IqSignal awgn(const IqSignal& signal, const ChannelConfig& config, double signal_power)
{
    const double variance = noise_variance(config, signal_power);
    if (!config.ebn0_db) {
        return signal;
    }
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    IqSignal out = signal;
    for (auto& s : out.samples) {
        const double ni = gauss(rng);
        const double nq = gauss(rng);
        s += Complex(ni, nq);
    }
    return out;
}

IqSignal impair(const IqSignal& signal, double gain, double phase_deg)
{
    if (!(gain > 0.0)) {
        throw InvalidArgument("impairment gain must be positive");
    }
    const Complex factor = std::polar(gain, phase_deg * std::numbers::pi / 180.0);
    IqSignal out = signal;
    for (auto& s : out.samples) {
        s *= factor;
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace pulselab
