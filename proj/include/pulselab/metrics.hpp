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
#include <span>
#include <vector>

#include "pulselab/signal.hpp"

namespace pulselab {

struct ErrorSummary {
    double evm_pct_rms = 0.0;
    double mag_err_pct_rms = 0.0;
    double phase_err_deg_rms = 0.0;
    std::size_t n_symbols = 0;
};

/// Least-squares complex scalar c minimizing sum |c * measured - reference|^2.
[[nodiscard]] Complex align(std::span<const Complex> measured, std::span<const Complex> reference);

/// Symbol-instant error metrics. Magnitude error and EVM are normalized by the
/// rms reference magnitude; phase error is wrapped to (-180, 180] degrees.
[[nodiscard]] ErrorSummary error_metrics(std::span<const Complex> measured, std::span<const Complex> reference,
                                         bool pre_align);

/// Ideal reference at the symbol instants. A raised-cosine reference filter has
/// zero ISI there, so this is the decided constellation points themselves.
[[nodiscard]] std::vector<Complex> build_reference(std::span<const Complex> decided_symbols);

struct BerCount {
    std::size_t errors = 0;
    std::size_t total = 0;
    double ber = 0.0;
};

[[nodiscard]] BerCount bit_error_rate(const BitStream& tx_bits, const BitStream& rx_bits);

} // namespace pulselab
