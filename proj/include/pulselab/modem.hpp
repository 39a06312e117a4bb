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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pulselab/pulse_shaping.hpp"
#include "pulselab/signal.hpp"

namespace pulselab {

struct TxFrame {
    BitStream bits;
    SymbolStream symbols;
    IqSignal signal;
    FirFilter filter;
    ModFormat format = ModFormat::Qpsk;
    int samples_per_symbol = 1;
};

struct RxResult {
    std::vector<Complex> measured_symbols;
    std::vector<Complex> decided_symbols;
    BitStream decided_bits;
    /// Complex gain applied before decisions (1 when alignment is off).
    Complex applied_gain{1.0, 0.0};
};

/// Gray-coded QPSK points indexed by (b_I << 1) | b_Q.
[[nodiscard]] const std::array<Complex, 4>& qpsk_constellation() noexcept;

/// Nearest QPSK point; a zero rail resolves to the positive side.
[[nodiscard]] Complex decide_qpsk(Complex z) noexcept;

/// Pairs (b_I, b_Q): 0 -> +1/sqrt2, 1 -> -1/sqrt2 on each rail. OQPSK shares the map.
[[nodiscard]] SymbolStream map_symbols(const BitStream& bits, ModFormat format, double symbol_rate_hz = 1.0);

/// Inverse of map_symbols for points on the constellation (signs only).
[[nodiscard]] BitStream demap_symbols(std::span<const Complex> symbols);

/// Impulse train at sps spacing through the filter. OQPSK delays the Q rail by
/// sps/2 samples before filtering. Output length N * sps + M - 1.
[[nodiscard]] IqSignal modulate_baseband(const SymbolStream& symbols, ModFormat format, const FirFilter& filter);

/// Map + modulate.
[[nodiscard]] TxFrame transmit(const BitStream& bits, ModFormat format, const FirFilter& filter,
                               double symbol_rate_hz);

struct ReceiverConfig {
    ModFormat format = ModFormat::Qpsk;
    std::optional<FirFilter> measurement_filter;
    int samples_per_symbol = 1;
    std::size_t n_symbols = 0;
    /// Index of the first I-rail symbol-centre sample after the measurement filter.
    std::size_t delay_samples = 0;
    /// Cascade value at the sampling instant; measured symbols are divided by it.
    double nominal_gain = 1.0;
    /// Least-squares complex gain fit against first-pass decisions.
    bool align = true;
};

/// Receiver matched to a known transmit filter: delay is floor of the summed
/// group delays and the nominal gain is the cascade tap at that delay.
[[nodiscard]] ReceiverConfig receiver_for(const FirFilter& tx_filter, ModFormat format,
                                          const std::optional<FirFilter>& measurement_filter, std::size_t n_symbols);

[[nodiscard]] RxResult demodulate(const IqSignal& signal, const ReceiverConfig& config);

/// Delay is tx_group_delay_samples plus the measurement filter's (M - 1) / 2.
[[nodiscard]] RxResult demodulate(const IqSignal& signal, ModFormat format,
                                  const std::optional<FirFilter>& measurement_filter, int samples_per_symbol,
                                  std::size_t n_symbols, std::size_t tx_group_delay_samples);

} // namespace pulselab
