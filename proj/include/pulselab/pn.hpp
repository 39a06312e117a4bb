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
#include <cstdint>
#include <string>
#include <vector>

#include "pulselab/signal.hpp"

namespace pulselab {

/// Fibonacci LFSR description.
///
/// `taps` lists the exponents of the feedback polynomial other than the
/// constant term, so x^6 + x + 1 is {6, 1}. The register holds `degree` bits;
/// the output is the register LSB and the feedback entering the MSB is the XOR
/// of the LSB with every stage named by a tap exponent below the degree. The
/// stream obeys a[n+d] = a[n] ^ sum(a[n+e]) over those exponents e.
struct LfsrConfig {
    int degree = 6;
    std::vector<int> taps{6, 1};
    std::uint32_t seed = 0x3F;

    /// "x^6+x+1"
    [[nodiscard]] std::string polynomial() const;
};

inline constexpr const char* kLfsrTopology = "fibonacci";

/// First n_bits of the LFSR output. Throws on an all-zero seed.
[[nodiscard]] BitStream generate_pn(const LfsrConfig& config, std::size_t n_bits);

} // namespace pulselab
