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
#include <optional>
#include <string>
#include <vector>

#include "pulselab/metrics.hpp"
#include "pulselab/pn.hpp"
#include "pulselab/pulse_shaping.hpp"
#include "pulselab/signal.hpp"

namespace pulselab {

/// Which filter family a sweep stage uses: the short 8-tap instrument-style
/// filters, or long near-ideal designs.
struct FilterProfile {
    enum class Kind { Vsg8, Long };

    Kind kind = Kind::Vsg8;
    int span_symbols = 32;
    int samples_per_symbol = 16;

    static FilterProfile vsg8() { return {}; }
    static FilterProfile long_filter(int span_symbols, int samples_per_symbol)
    {
        return {Kind::Long, span_symbols, samples_per_symbol};
    }

    [[nodiscard]] FirFilter design(FilterKind kind, RollOff alpha, Normalization normalization) const;
    [[nodiscard]] int sps() const noexcept;
    /// Symbols dropped at each end of a record: ceil(span / 2).
    [[nodiscard]] std::size_t edge_symbols() const noexcept;
    /// "vsg8" or "long(span=32,sps=16)"
    [[nodiscard]] std::string describe() const;
};

struct SweepConfig {
    std::vector<ModFormat> formats{ModFormat::Qpsk, ModFormat::Oqpsk};
    std::vector<FilterKind> filter_kinds{FilterKind::RaisedCosine, FilterKind::RootRaisedCosine};
    std::vector<RollOff> alphas{RollOff(0.1), RollOff(0.22), RollOff(0.35), RollOff(0.7), RollOff(1.0)};
    double symbol_rate_hz = 25000.0;
    /// Symbols scored for EVM / magnitude / phase error, after edge exclusion.
    std::size_t n_symbols = 256;
    /// Filters for the error-metric and BER runs.
    FilterProfile filter_profile = FilterProfile::vsg8();
    /// Filters for the occupied-bandwidth run.
    FilterProfile spectrum_profile = FilterProfile::long_filter(32, 16);
    /// Eb/N0 applied to the error-metric run; nullopt is noiseless.
    std::optional<double> metrics_ebn0_db;
    /// Eb/N0 for the BER run; nullopt runs it noiseless.
    std::optional<double> ber_ebn0_db = 6.0;
    std::size_t ber_bits = 1'000'000;
    /// Transmit samples fed to the PSD estimate.
    std::size_t psd_samples = 1U << 18;
    std::size_t psd_segment = 4096;
    double psd_overlap = 0.5;
    LfsrConfig pn;
    std::uint64_t master_seed = 42;

    /// Throws InvalidArgument on an unusable configuration.
    void validate() const;
};

struct RecordMetadata {
    std::string filter_profile;
    std::string spectrum_profile;
    std::string measurement_filter;
    std::string rng_id;
    std::uint64_t metrics_seed = 0;
    std::uint64_t ber_seed = 0;
    std::size_t edge_symbols = 0;
    std::size_t metric_symbols = 0;
    std::size_t ber_bits = 0;
    std::size_t ber_errors = 0;
    std::size_t psd_samples = 0;
    std::size_t psd_segments = 0;
};

struct MetricsRecord {
    ModFormat format = ModFormat::Qpsk;
    FilterKind filter_kind = FilterKind::RaisedCosine;
    RollOff alpha;
    ErrorSummary errors;
    double ber = 0.0;
    double obw_hz = 0.0;
    double bw_efficiency = 0.0;
    RecordMetadata metadata;
};

/// Measurement filter paired with a transmit filter kind: none for RC (the
/// transmit pulse is already Nyquist), a matched RRC for RRC.
[[nodiscard]] std::optional<FirFilter> measurement_filter_for(const FirFilter& tx_filter);

/// Deterministic index of (format, kind, alpha) within the config's factorial grid.
[[nodiscard]] std::size_t point_index(const SweepConfig& config, ModFormat format, FilterKind kind,
                                      std::size_t alpha_index);

/// pn -> map -> modulate -> channel -> demodulate -> metrics, plus BER and OBW runs.
[[nodiscard]] MetricsRecord run_point(const SweepConfig& config, ModFormat format, FilterKind kind, RollOff alpha);

/// Records ordered by format, filter kind, then ascending alpha. workers == 0
/// uses the hardware concurrency.
[[nodiscard]] std::vector<MetricsRecord> run_sweep(const SweepConfig& config, unsigned workers = 0);

struct PointId {
    ModFormat format = ModFormat::Qpsk;
    FilterKind filter_kind = FilterKind::RaisedCosine;
    RollOff alpha;

    friend bool operator==(const PointId&, const PointId&) = default;
};

struct BestChoice {
    std::string metric;
    /// All points attaining the best value; more than one on exact ties.
    std::vector<PointId> winners;
    double value = 0.0;
};

/// Argmin of EVM, magnitude error, phase error and BER; argmax of bandwidth
/// efficiency restricted to alpha <= 0.35.
[[nodiscard]] std::vector<BestChoice> best_choice_summary(const std::vector<MetricsRecord>& records);

} // namespace pulselab
