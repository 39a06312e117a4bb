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

#include "pulselab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "pulselab/channel.hpp"
#include "pulselab/errors.hpp"
#include "pulselab/modem.hpp"
#include "pulselab/spectrum.hpp"

namespace pulselab {

FirFilter FilterProfile::design(FilterKind filter_kind, RollOff alpha, Normalization normalization) const
{
    if (kind == Kind::Vsg8) {
        return design_vsg8(filter_kind, alpha);
    }
    return design_fir(filter_kind, alpha, samples_per_symbol, span_symbols, normalization);
}

int FilterProfile::sps() const noexcept
{
    return kind == Kind::Vsg8 ? kVsg8SamplesPerSymbol : samples_per_symbol;
}

std::size_t FilterProfile::edge_symbols() const noexcept
{
    const int span = kind == Kind::Vsg8 ? kVsg8Taps / kVsg8SamplesPerSymbol : span_symbols;
    return static_cast<std::size_t>((span + 1) / 2);
}

std::string FilterProfile::describe() const
{
    if (kind == Kind::Vsg8) {
        return "vsg8";
    }
    return fmt::format("long(span={},sps={})", span_symbols, samples_per_symbol);
}

void SweepConfig::validate() const
{
    if (formats.empty() || filter_kinds.empty() || alphas.empty()) {
        throw InvalidArgument("sweep needs at least one format, filter kind and alpha");
    }
    if (!(symbol_rate_hz > 0.0)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    if (n_symbols < 64) {
        throw InvalidArgument("metric record must hold at least 64 symbols");
    }
    for (const auto* p : {&filter_profile, &spectrum_profile}) {
        if (p->kind == FilterProfile::Kind::Long && (p->span_symbols < 1 || p->samples_per_symbol < 1)) {
            throw InvalidArgument("long filter profile needs span >= 1 and sps >= 1");
        }
    }
    if (ber_bits < 2 || ber_bits % 2 != 0) {
        throw InvalidArgument("BER bit count must be even and positive");
    }
    if (psd_samples < psd_segment) {
        throw InvalidArgument("PSD record shorter than one segment");
    }
}

std::optional<FirFilter> measurement_filter_for(const FirFilter& tx_filter)
{
    if (tx_filter.kind == FilterKind::RaisedCosine) {
        return std::nullopt;
    }
    return tx_filter;
}

std::size_t point_index(const SweepConfig& config, ModFormat format, FilterKind kind, std::size_t alpha_index)
{
    const auto fi = static_cast<std::size_t>(std::ranges::find(config.formats, format) - config.formats.begin());
    const auto ki =
        static_cast<std::size_t>(std::ranges::find(config.filter_kinds, kind) - config.filter_kinds.begin());
    return (fi * config.filter_kinds.size() + ki) * config.alphas.size() + alpha_index;
}

namespace {

template <typename T>
std::vector<T> middle(const std::vector<T>& v, std::size_t first, std::size_t count)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(first + count)};
}

Normalization normalization_for(const FilterProfile& profile)
{
    return profile.kind == FilterProfile::Kind::Vsg8 ? Normalization::UnitPeak : Normalization::UnitEnergy;
}

} // namespace

MetricsRecord run_point(const SweepConfig& config, ModFormat format, FilterKind kind, RollOff alpha)
{
    config.validate();
    // Noise streams depend on the (format, kind) series but not on alpha, so
    // points along one alpha curve see the same noise realization.
    const std::size_t series = point_index(config, format, kind, 0) / config.alphas.size();

    MetricsRecord rec;
    rec.format = format;
    rec.filter_kind = kind;
    rec.alpha = alpha;
    auto& meta = rec.metadata;
    meta.filter_profile = config.filter_profile.describe();
    meta.spectrum_profile = config.spectrum_profile.describe();
    meta.rng_id = kRngId;
    meta.metrics_seed = derive_seed(config.master_seed, 2 * series);
    meta.ber_seed = derive_seed(config.master_seed, 2 * series + 1);

    const FilterProfile& profile = config.filter_profile;
    const FirFilter tx = profile.design(kind, alpha, normalization_for(profile));
    const auto meas = measurement_filter_for(tx);
    meta.measurement_filter = meas ? "rrc" : "off";
    const std::size_t edge = profile.edge_symbols();
    meta.edge_symbols = edge;

    // Error metrics on a short record.
    {
        const std::size_t total = config.n_symbols + 2 * edge;
        const auto frame = transmit(generate_pn(config.pn, 2 * total), format, tx, config.symbol_rate_hz);
        IqSignal signal = frame.signal;
        if (config.metrics_ebn0_db) {
            ChannelConfig ch{config.metrics_ebn0_db, 2, tx.samples_per_symbol, meta.metrics_seed, kRngId};
            signal = awgn(signal, ch, mean_power(signal));
        }
        const auto rx = demodulate(signal, receiver_for(tx, format, meas, total));
        const auto measured = middle(rx.measured_symbols, edge, config.n_symbols);
        const auto reference = build_reference(middle(rx.decided_symbols, edge, config.n_symbols));
        rec.errors = error_metrics(measured, reference, true);
        meta.metric_symbols = config.n_symbols;
    }

    // BER over AWGN.
    {
        if (profile.kind == FilterProfile::Kind::Long && meas) {
            double energy = 0.0;
            for (double h : tx.taps) {
                energy += h * h;
            }
            if (std::abs(energy - 1.0) > 1e-9) {
                throw std::logic_error("BER run expects unit-energy matched filters");
            }
        }
        const std::size_t total = config.ber_bits / 2 + 2 * edge;
        const BitStream bits = generate_pn(config.pn, 2 * total);
        const auto frame = transmit(bits, format, tx, config.symbol_rate_hz);
        ChannelConfig ch{config.ber_ebn0_db, 2, tx.samples_per_symbol, meta.ber_seed, kRngId};
        const auto noisy = awgn(frame.signal, ch, mean_power(frame.signal));
        const auto rx = demodulate(noisy, receiver_for(tx, format, meas, total));
        const auto count = bit_error_rate(bits.slice(2 * edge, config.ber_bits),
                                          rx.decided_bits.slice(2 * edge, config.ber_bits));
        rec.ber = count.ber;
        meta.ber_bits = count.total;
        meta.ber_errors = count.errors;
    }

    // Occupied bandwidth from a long noiseless record.
    {
        const FilterProfile& sp = config.spectrum_profile;
        const auto sps = static_cast<std::size_t>(sp.sps());
        const std::size_t total = (config.psd_samples + sps - 1) / sps;
        const FirFilter shaping = sp.design(kind, alpha, normalization_for(sp));
        const auto frame = transmit(generate_pn(config.pn, 2 * total), format, shaping, config.symbol_rate_hz);
        const auto psd = welch_psd(frame.signal, config.psd_segment, config.psd_overlap, Window::Hann);
        rec.obw_hz = occupied_bandwidth(psd, 0.99);
        rec.bw_efficiency = bandwidth_efficiency(2.0 * config.symbol_rate_hz, rec.obw_hz);
        meta.psd_samples = frame.signal.size();
        meta.psd_segments = psd.n_segments;
    }
    return rec;
}

std::vector<MetricsRecord> run_sweep(const SweepConfig& config, unsigned workers)
{
    config.validate();
    struct Job {
        ModFormat format;
        FilterKind kind;
        RollOff alpha;
    };
    std::vector<Job> jobs;
    for (auto f : config.formats) {
        for (auto k : config.filter_kinds) {
            auto alphas = config.alphas;
            std::ranges::sort(alphas);
            for (auto a : alphas) {
                jobs.push_back({f, k, a});
            }
        }
    }

    std::vector<MetricsRecord> records(jobs.size());
    std::vector<std::exception_ptr> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                records[i] = run_point(config, jobs[i].format, jobs[i].kind, jobs[i].alpha);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!failures[i]) {
            continue;
        }
        const auto where = fmt::format("sweep point {}/{}/alpha={}: ", to_string(jobs[i].format),
                                       to_string(jobs[i].kind), jobs[i].alpha.value());
        try {
            std::rethrow_exception(failures[i]);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(where + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(where + e.what());
        }
    }
    return records;
}

std::vector<BestChoice> best_choice_summary(const std::vector<MetricsRecord>& records)
{
    if (records.empty()) {
        throw InvalidArgument("no records to summarize");
    }
    struct Rule {
        const char* name;
        double (*value)(const MetricsRecord&);
        bool maximize;
        double alpha_cap;
    };
    static constexpr Rule rules[] = {
        {"EVM", [](const MetricsRecord& r) { return r.errors.evm_pct_rms; }, false, 1.0},
        {"Magnitude Error", [](const MetricsRecord& r) { return r.errors.mag_err_pct_rms; }, false, 1.0},
        {"Phase Error", [](const MetricsRecord& r) { return r.errors.phase_err_deg_rms; }, false, 1.0},
        {"Bandwidth Efficiency", [](const MetricsRecord& r) { return r.bw_efficiency; }, true, 0.35},
        {"BER", [](const MetricsRecord& r) { return r.ber; }, false, 1.0},
    };

    std::vector<BestChoice> out;
    for (const auto& rule : rules) {
        BestChoice best{rule.name, {}, 0.0};
        bool have = false;
        for (const auto& r : records) {
            if (r.alpha.value() > rule.alpha_cap + 1e-12) {
                continue;
            }
            const double v = rule.value(r);
            const bool better = !have || (rule.maximize ? v > best.value : v < best.value);
            if (better) {
                best.value = v;
                best.winners.clear();
                have = true;
            }
            if (v == best.value) {
                best.winners.push_back({r.format, r.filter_kind, r.alpha});
            }
        }
        if (have) {
            out.push_back(std::move(best));
        }
    }
    return out;
}

} // namespace pulselab
