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

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "pulselab/signal.hpp"

namespace pulselab {

enum class Normalization { UnitPeak, UnitEnergy, UnitDcGain };

[[nodiscard]] std::string_view to_string(Normalization n) noexcept;
/// "peak", "energy", "dc"
[[nodiscard]] Normalization parse_normalization(std::string_view text);

/// Real, even-symmetric FIR pulse-shaping filter sampled at T / samples_per_symbol.
struct FirFilter {
    std::vector<double> taps;
    int samples_per_symbol = 1;
    FilterKind kind = FilterKind::RaisedCosine;
    RollOff alpha;
    double span_symbols = 0.0;
    Normalization normalization = Normalization::UnitPeak;

    FirFilter() = default;
    /// Validates: non-empty, finite, even-symmetric within 1e-12, sps >= 1.
    FirFilter(std::vector<double> taps, int samples_per_symbol, FilterKind kind, RollOff alpha, double span_symbols,
              Normalization normalization);

    [[nodiscard]] std::size_t size() const noexcept { return taps.size(); }
    /// (M - 1) / 2; a half-integer for even-length filters.
    [[nodiscard]] double group_delay_samples() const noexcept { return 0.5 * static_cast<double>(taps.size() - 1); }
};

// Closed-form pulses with time in symbol periods (t / T). Removable
// singularities resolve to their limits when the denominator is within 1e-9.
[[nodiscard]] double rc_impulse(double t_over_T, RollOff alpha) noexcept;
[[nodiscard]] double rrc_impulse(double t_over_T, RollOff alpha) noexcept;
[[nodiscard]] double pulse_impulse(FilterKind kind, double t_over_T, RollOff alpha) noexcept;

/// Raised-cosine spectrum: T on the flat band, cosine taper, 0 beyond (1 + alpha) F / 2.
[[nodiscard]] double rc_freq_response(double f_hz, RollOff alpha, double symbol_rate_hz);

/// Samples the closed-form pulse at spacing T / sps with M = span * sps + 1 taps.
[[nodiscard]] FirFilter design_fir(FilterKind kind, RollOff alpha, int samples_per_symbol, int span_symbols,
                                   Normalization normalization = Normalization::UnitPeak);

/// Short instrument-style filter: 8 unit-peak taps at T/4 spacing covering the
/// two-symbol main lobe, t_k = (k - 3.5) T / 4. Even length, so the peak falls
/// between two taps.
[[nodiscard]] FirFilter design_vsg8(FilterKind kind, RollOff alpha);

inline constexpr int kVsg8Taps = 8;
inline constexpr int kVsg8SamplesPerSymbol = 4;

/// Signal-generator tap tables (8 taps, unit peak), reproduced verbatim.
[[nodiscard]] FirFilter vsg_reference_taps(FilterKind kind);

/// Full linear convolution with zero initial state; output length N + M - 1.
[[nodiscard]] IqSignal fir_apply(std::span<const double> taps, const IqSignal& signal);
[[nodiscard]] IqSignal fir_apply(const FirFilter& filter, const IqSignal& signal);

/// Real full convolution, used for filter cascades.
[[nodiscard]] std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

struct IsiReport {
    /// max |sum_k G(f + kF) - T| / T over |f| <= F/2, relative to the peak tap.
    double max_folded_deviation = 0.0;
    /// max |g(nT)| / |g(0)| over n != 0 from symbol-spaced taps.
    double worst_symbol_crossing = 0.0;
};

[[nodiscard]] IsiReport check_nyquist_isi(std::span<const double> taps, int samples_per_symbol);
[[nodiscard]] IsiReport check_nyquist_isi(const FirFilter& filter);

class FrequencyResponse {
public:
    using Fn = std::function<Complex(double)>;

    FrequencyResponse(Fn fn, double band_limit_hz) : fn_(std::move(fn)), band_limit_hz_(band_limit_hz) {}

    [[nodiscard]] Complex operator()(double f_hz) const { return fn_(f_hz); }
    [[nodiscard]] double band_limit_hz() const noexcept { return band_limit_hz_; }

private:
    Fn fn_;
    double band_limit_hz_;
};

[[nodiscard]] FrequencyResponse rc_response(RollOff alpha, double symbol_rate_hz);
/// sqrt(G_RC(f)).
[[nodiscard]] FrequencyResponse rrc_response(RollOff alpha, double symbol_rate_hz);
[[nodiscard]] FrequencyResponse flat_response(Complex value = 1.0);
/// Transform of taps treated as samples of a pulse at sample_rate_hz, scaled by
/// the sample period and referenced to the filter centre (zero phase for even taps).
[[nodiscard]] FrequencyResponse fir_response(std::vector<double> taps, double sample_rate_hz);
/// Pointwise product; band limit is the tightest of the parts.
[[nodiscard]] FrequencyResponse cascade_response(std::span<const FrequencyResponse> parts);

/// One coefficient per line, 17 significant digits.
void write_taps_csv(std::ostream& out, std::span<const double> taps);

} // namespace pulselab
