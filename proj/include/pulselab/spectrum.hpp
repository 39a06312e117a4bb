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
#include <iosfwd>
#include <string_view>
#include <vector>

#include "pulselab/signal.hpp"

namespace pulselab {

enum class Window { Hann, Rectangular };

[[nodiscard]] Window parse_window(std::string_view text);

/// Two-sided density (power per Hz) on a uniform grid centred at 0 Hz.
struct PsdEstimate {
    std::vector<double> freqs_hz;
    std::vector<double> density;
    double resolution_hz = 0.0;
    std::size_t n_segments = 0;

    /// sum(density) * resolution
    [[nodiscard]] double total_power() const noexcept;
};

/// Averaged, windowed, overlapped periodogram. segment_len must be a power of
/// two no longer than the signal; the window is power-normalized so the total
/// matches the mean signal power.
[[nodiscard]] PsdEstimate welch_psd(const IqSignal& signal, std::size_t segment_len = 4096,
                                    double overlap_fraction = 0.5, Window window = Window::Hann);

/// Width of the band left after trimming (1 - fraction) / 2 of the power from
/// each spectral tail. Each bin is treated as a uniform slab of width
/// resolution_hz, so the edges interpolate linearly inside the boundary bins.
[[nodiscard]] double occupied_bandwidth(const PsdEstimate& psd, double fraction = 0.99);

[[nodiscard]] double bandwidth_efficiency(double bit_rate_bps, double obw_hz);

/// "freq_hz,density" header then one row per bin.
void write_psd_csv(std::ostream& out, const PsdEstimate& psd);

} // namespace pulselab
