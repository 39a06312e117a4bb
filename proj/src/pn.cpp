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

#include "pulselab/pn.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "pulselab/errors.hpp"

namespace pulselab {

std::string LfsrConfig::polynomial() const
{
    auto exps = taps;
    std::ranges::sort(exps, std::greater<>());
    std::string out;
    for (int e : exps) {
        if (!out.empty()) {
            out += '+';
        }
        out += e == 1 ? std::string("x") : fmt::format("x^{}", e);
    }
    return out + "+1";
}

BitStream generate_pn(const LfsrConfig& config, std::size_t n_bits)
{
    if (config.degree < 2 || config.degree > 31) {
        throw InvalidArgument("LFSR degree must be in [2, 31]");
    }
    if (n_bits == 0) {
        throw InvalidArgument("n_bits must be positive");
    }
    const std::uint32_t mask = (std::uint32_t{1} << config.degree) - 1U;
    std::uint32_t state = config.seed & mask;
    if (state == 0) {
        throw InvalidArgument("degenerate LFSR seed");
    }
    if (std::ranges::find(config.taps, config.degree) == config.taps.end()) {
        throw InvalidArgument("LFSR taps must include the degree");
    }
    std::uint32_t feedback_mask = 1U;
    for (int e : config.taps) {
        if (e < 1 || e > config.degree) {
            throw InvalidArgument("LFSR tap exponent out of range");
        }
        if (e < config.degree) {
            feedback_mask |= std::uint32_t{1} << e;
        }
    }

    std::vector<std::uint8_t> bits(n_bits);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(state & 1U);
        const auto fb = static_cast<std::uint32_t>(__builtin_parity(state & feedback_mask));
        state = (state >> 1) | (fb << (config.degree - 1));
    }
    return BitStream(std::move(bits));
}

} // namespace pulselab
