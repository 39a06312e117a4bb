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

#include "pulselab/modem.hpp"

#include <cmath>
#include <numbers>

#include "pulselab/errors.hpp"
#include "pulselab/metrics.hpp"

namespace pulselab {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_oqpsk_sps(ModFormat format, int sps)
{
    if (format == ModFormat::Oqpsk && (sps < 2 || sps % 2 != 0)) {
        throw InvalidArgument("OQPSK requires even samples/symbol");
    }
}

std::vector<Complex> decide_all(std::span<const Complex> z)
{
    std::vector<Complex> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        out[k] = decide_qpsk(z[k]);
    }
    return out;
}

} // namespace

const std::array<Complex, 4>& qpsk_constellation() noexcept
{
    static const std::array<Complex, 4> points{
        Complex(kInvSqrt2, kInvSqrt2),
        Complex(kInvSqrt2, -kInvSqrt2),
        Complex(-kInvSqrt2, kInvSqrt2),
        Complex(-kInvSqrt2, -kInvSqrt2),
    };
    return points;
}

Complex decide_qpsk(Complex z) noexcept
{
    return {z.real() >= 0.0 ? kInvSqrt2 : -kInvSqrt2, z.imag() >= 0.0 ? kInvSqrt2 : -kInvSqrt2};
}

SymbolStream map_symbols(const BitStream& bits, ModFormat /*format*/, double symbol_rate_hz)
{
    if (bits.size() % 2 != 0) {
        throw InvalidArgument("odd bit count cannot map to QPSK symbols");
    }
    const auto& table = qpsk_constellation();
    std::vector<Complex> symbols(bits.size() / 2);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        symbols[k] = table[static_cast<std::size_t>((bits[2 * k] << 1) | bits[2 * k + 1])];
    }
    return {std::move(symbols), symbol_rate_hz};
}

BitStream demap_symbols(std::span<const Complex> symbols)
{
    std::vector<std::uint8_t> bits(2 * symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        bits[2 * k] = symbols[k].real() < 0.0 ? 1 : 0;
        bits[2 * k + 1] = symbols[k].imag() < 0.0 ? 1 : 0;
    }
    return BitStream(std::move(bits));
}

IqSignal modulate_baseband(const SymbolStream& symbols, ModFormat format, const FirFilter& filter)
{
    if (symbols.size() == 0) {
        throw InvalidArgument("no symbols to modulate");
    }
    const int sps = filter.samples_per_symbol;
    require_oqpsk_sps(format, sps);
    const std::size_t step = static_cast<std::size_t>(sps);
    const std::size_t q_offset = format == ModFormat::Oqpsk ? step / 2 : 0;

    std::vector<Complex> train(symbols.size() * step, Complex{});
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        train[k * step] += Complex(symbols.symbols[k].real(), 0.0);
        train[k * step + q_offset] += Complex(0.0, symbols.symbols[k].imag());
    }
    return fir_apply(filter, IqSignal(std::move(train), symbols.symbol_rate_hz * sps));
}

TxFrame transmit(const BitStream& bits, ModFormat format, const FirFilter& filter, double symbol_rate_hz)
{
    auto symbols = map_symbols(bits, format, symbol_rate_hz);
    auto signal = modulate_baseband(symbols, format, filter);
    return {bits, std::move(symbols), std::move(signal), filter, format, filter.samples_per_symbol};
}

ReceiverConfig receiver_for(const FirFilter& tx_filter, ModFormat format,
                            const std::optional<FirFilter>& measurement_filter, std::size_t n_symbols)
{
    if (measurement_filter && measurement_filter->samples_per_symbol != tx_filter.samples_per_symbol) {
        throw InvalidArgument("measurement filter rate differs from the transmit filter");
    }
    std::vector<double> cascade =
        measurement_filter ? convolve(tx_filter.taps, measurement_filter->taps) : tx_filter.taps;
    double delay = tx_filter.group_delay_samples();
    if (measurement_filter) {
        delay += measurement_filter->group_delay_samples();
    }
    ReceiverConfig rx;
    rx.format = format;
    rx.measurement_filter = measurement_filter;
    rx.samples_per_symbol = tx_filter.samples_per_symbol;
    rx.n_symbols = n_symbols;
    rx.delay_samples = static_cast<std::size_t>(std::floor(delay));
    rx.nominal_gain = cascade[rx.delay_samples];
    return rx;
}

RxResult demodulate(const IqSignal& signal, const ReceiverConfig& config)
{
    if (signal.empty()) {
        throw InvalidArgument("empty signal");
    }
    const int sps = config.samples_per_symbol;
    if (sps < 1) {
        throw InvalidArgument("samples per symbol must be >= 1");
    }
    require_oqpsk_sps(config.format, sps);
    if (config.n_symbols == 0) {
        throw InvalidArgument("n_symbols must be positive");
    }
    if (!(std::abs(config.nominal_gain) > 0.0)) {
        throw InvalidArgument("nominal receiver gain must be nonzero");
    }

    const IqSignal filtered =
        config.measurement_filter ? fir_apply(*config.measurement_filter, signal) : signal;
    const std::size_t step = static_cast<std::size_t>(sps);
    const std::size_t q_offset = config.format == ModFormat::Oqpsk ? step / 2 : 0;
    const std::size_t last = config.delay_samples + (config.n_symbols - 1) * step + q_offset;
    if (last >= filtered.size()) {
        throw InvalidArgument("signal too short for the requested symbols");
    }

    RxResult rx;
    rx.measured_symbols.resize(config.n_symbols);
    for (std::size_t k = 0; k < config.n_symbols; ++k) {
        const std::size_t i = config.delay_samples + k * step;
        rx.measured_symbols[k] =
            Complex(filtered.samples[i].real(), filtered.samples[i + q_offset].imag()) / config.nominal_gain;
    }
    if (config.align) {
        const auto first_pass = decide_all(rx.measured_symbols);
        rx.applied_gain = align(rx.measured_symbols, first_pass);
        for (auto& z : rx.measured_symbols) {
            z *= rx.applied_gain;
        }
    }
    rx.decided_symbols = decide_all(rx.measured_symbols);
    rx.decided_bits = demap_symbols(rx.decided_symbols);
    return rx;
}

RxResult demodulate(const IqSignal& signal, ModFormat format, const std::optional<FirFilter>& measurement_filter,
                    int samples_per_symbol, std::size_t n_symbols, std::size_t tx_group_delay_samples)
{
    ReceiverConfig rx;
    rx.format = format;
    rx.measurement_filter = measurement_filter;
    rx.samples_per_symbol = samples_per_symbol;
    rx.n_symbols = n_symbols;
    rx.delay_samples = tx_group_delay_samples;
    if (measurement_filter) {
        rx.delay_samples += static_cast<std::size_t>(std::floor(measurement_filter->group_delay_samples()));
    }
    return demodulate(signal, rx);
}

} // namespace pulselab
