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

#include "pulselab/pulse_shaping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "pulselab/errors.hpp"

namespace pulselab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularGuard = 1e-9;

double sinc(double x) noexcept
{
    if (std::abs(x) < 1e-15) {
        return 1.0;
    }
    return std::sin(kPi * x) / (kPi * x);
}

void normalize(std::vector<double>& taps, Normalization mode)
{
    double scale = 1.0;
    switch (mode) {
    case Normalization::UnitPeak:
        scale = std::ranges::max(taps, {}, [](double v) { return std::abs(v); });
        scale = std::abs(scale);
        break;
    case Normalization::UnitEnergy: {
        double e = 0.0;
        for (double v : taps) {
            e += v * v;
        }
        scale = std::sqrt(e);
        break;
    }
    case Normalization::UnitDcGain:
        scale = 0.0;
        for (double v : taps) {
            scale += v;
        }
        break;
    }
    if (!(std::abs(scale) > 0.0)) {
        throw InvalidArgument("filter normalization divides by zero");
    }
    for (double& v : taps) {
        v /= scale;
    }
}

} // namespace

std::string_view to_string(Normalization n) noexcept
{
    switch (n) {
    case Normalization::UnitPeak:
        return "peak";
    case Normalization::UnitEnergy:
        return "energy";
    case Normalization::UnitDcGain:
        return "dc";
    }
    return "peak";
}

Normalization parse_normalization(std::string_view text)
{
    if (text == "peak") {
        return Normalization::UnitPeak;
    }
    if (text == "energy") {
        return Normalization::UnitEnergy;
    }
    if (text == "dc") {
        return Normalization::UnitDcGain;
    }
    throw InvalidArgument(fmt::format("unknown normalization: {}", text));
}

FirFilter::FirFilter(std::vector<double> t, int sps, FilterKind k, RollOff a, double span, Normalization norm)
    : taps(std::move(t)), samples_per_symbol(sps), kind(k), alpha(a), span_symbols(span), normalization(norm)
{
    if (taps.empty()) {
        throw InvalidArgument("filter needs at least one tap");
    }
    if (sps < 1) {
        throw InvalidArgument("samples per symbol must be >= 1");
    }
    const std::size_t m = taps.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(taps[i])) {
            throw InvalidArgument("non-finite filter tap");
        }
        if (std::abs(taps[i] - taps[m - 1 - i]) > 1e-12) {
            throw InvalidArgument("filter taps are not even-symmetric");
        }
    }
}

double rc_impulse(double x, RollOff alpha) noexcept
{
    const double a = alpha.value();
    const double d = 1.0 - (2.0 * a * x) * (2.0 * a * x);
    if (a > 0.0 && std::abs(d) < kSingularGuard) {
        return kPi / 4.0 * sinc(1.0 / (2.0 * a));
    }
    return sinc(x) * std::cos(kPi * a * x) / d;
}

double rrc_impulse(double x, RollOff alpha) noexcept
{
    const double a = alpha.value();
    if (std::abs(x) < kSingularGuard) {
        return 1.0 - a + 4.0 * a / kPi;
    }
    const double q = 4.0 * a * x;
    const double d = 1.0 - q * q;
    if (a > 0.0 && std::abs(d) < kSingularGuard) {
        const double arg = kPi / (4.0 * a);
        return a / std::numbers::sqrt2 *
               ((1.0 + 2.0 / kPi) * std::sin(arg) + (1.0 - 2.0 / kPi) * std::cos(arg));
    }
    const double num = std::sin(kPi * (1.0 - a) * x) + 4.0 * a * x * std::cos(kPi * (1.0 + a) * x);
    return num / (kPi * x * d);
}

double pulse_impulse(FilterKind kind, double x, RollOff alpha) noexcept
{
    return kind == FilterKind::RaisedCosine ? rc_impulse(x, alpha) : rrc_impulse(x, alpha);
}

double rc_freq_response(double f_hz, RollOff alpha, double symbol_rate_hz)
{
    if (!(symbol_rate_hz > 0.0)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    const double a = alpha.value();
    const double t = 1.0 / symbol_rate_hz;
    const double f = std::abs(f_hz);
    const double lo = (1.0 - a) * symbol_rate_hz / 2.0;
    const double hi = (1.0 + a) * symbol_rate_hz / 2.0;
    if (a == 0.0) {
        if (f < lo) {
            return t;
        }
        return f == lo ? t / 2.0 : 0.0;
    }
    if (f <= lo) {
        return t;
    }
    if (f >= hi) {
        return 0.0;
    }
    return t / 2.0 * (1.0 + std::cos(kPi * t / a * (f - (1.0 - a) / (2.0 * t))));
}

FirFilter design_fir(FilterKind kind, RollOff alpha, int sps, int span, Normalization normalization)
{
    if (sps < 1) {
        throw InvalidArgument("samples per symbol must be >= 1");
    }
    if (span < 1) {
        throw InvalidArgument("filter span must be >= 1 symbol");
    }
    const int m = span * sps + 1;
    const double centre = 0.5 * (m - 1);
    std::vector<double> taps(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        taps[static_cast<std::size_t>(k)] = pulse_impulse(kind, (k - centre) / sps, alpha);
    }
    // Exact symmetry: mirror the first half so rounding cannot break the invariant.
    for (int k = 0; k < m / 2; ++k) {
        taps[static_cast<std::size_t>(m - 1 - k)] = taps[static_cast<std::size_t>(k)];
    }
    normalize(taps, normalization);
    return {std::move(taps), sps, kind, alpha, static_cast<double>(span), normalization};
}

FirFilter design_vsg8(FilterKind kind, RollOff alpha)
{
    constexpr double centre = 0.5 * (kVsg8Taps - 1);
    std::vector<double> taps(kVsg8Taps);
    for (int k = 0; k < kVsg8Taps / 2; ++k) {
        const double v = pulse_impulse(kind, (k - centre) / kVsg8SamplesPerSymbol, alpha);
        taps[static_cast<std::size_t>(k)] = v;
        taps[static_cast<std::size_t>(kVsg8Taps - 1 - k)] = v;
    }
    normalize(taps, Normalization::UnitPeak);
    return {std::move(taps),
            kVsg8SamplesPerSymbol,
            kind,
            alpha,
            static_cast<double>(kVsg8Taps) / kVsg8SamplesPerSymbol,
            Normalization::UnitPeak};
}

FirFilter vsg_reference_taps(FilterKind kind)
{
    // Coefficients as produced by the signal generator; the roll-off used is unknown.
    static const std::vector<double> rc{0.015609, 0.174413, 0.588622, 1.000000,
                                        1.000000, 0.588622, 0.174413, 0.015609};
    static const std::vector<double> rrc{0.004490, 0.143258, 0.560131, 1.000000,
                                         1.000000, 0.560131, 0.143258, 0.004490};
    return {kind == FilterKind::RaisedCosine ? rc : rrc, 8, kind, RollOff{}, 1.0, Normalization::UnitPeak};
}

IqSignal fir_apply(std::span<const double> taps, const IqSignal& signal)
{
    if (signal.empty()) {
        throw InvalidArgument("empty signal");
    }
    if (taps.empty()) {
        throw InvalidArgument("filter needs at least one tap");
    }
    const std::size_t n = signal.size();
    const std::size_t m = taps.size();
    // Split rails so the inner loop is a plain real multiply-accumulate.
    std::vector<double> yi(n + m - 1, 0.0);
    std::vector<double> yq(n + m - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = signal.samples[i].real();
        const double xq = signal.samples[i].imag();
        if (xi == 0.0 && xq == 0.0) {
            continue;
        }
        double* oi = yi.data() + i;
        double* oq = yq.data() + i;
        for (std::size_t k = 0; k < m; ++k) {
            oi[k] += taps[k] * xi;
            oq[k] += taps[k] * xq;
        }
    }
    std::vector<Complex> out(n + m - 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {yi[i], yq[i]};
    }
    return {std::move(out), signal.sample_rate_hz};
}

IqSignal fir_apply(const FirFilter& filter, const IqSignal& signal)
{
    return fir_apply(std::span<const double>(filter.taps), signal);
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw InvalidArgument("cannot convolve an empty sequence");
    }
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

IsiReport check_nyquist_isi(std::span<const double> taps, int sps)
{
    if (sps < 2) {
        throw InvalidArgument("Nyquist check needs at least 2 samples per symbol");
    }
    if (taps.empty()) {
        throw InvalidArgument("filter needs at least one tap");
    }
    const std::size_t m = taps.size();
    const auto peak_it = std::ranges::max_element(taps, {}, [](double v) { return std::abs(v); });
    const auto ic = static_cast<std::ptrdiff_t>(peak_it - taps.begin());
    const double peak = std::abs(*peak_it);
    if (!(peak > 0.0)) {
        throw InvalidArgument("all-zero filter");
    }

    IsiReport report;
    for (std::ptrdiff_t k = ic % sps; k < static_cast<std::ptrdiff_t>(m); k += sps) {
        if (k != ic) {
            report.worst_symbol_crossing =
                std::max(report.worst_symbol_crossing, std::abs(taps[static_cast<std::size_t>(k)]) / peak);
        }
    }

    // Folded spectrum with T = 1 and sample spacing 1/sps. The reference is T * g(0) = peak.
    const double centre = 0.5 * static_cast<double>(m - 1);
    constexpr int kGrid = 257;
    for (int g = 0; g < kGrid; ++g) {
        const double f = -0.5 + static_cast<double>(g) / (kGrid - 1);
        Complex folded{0.0, 0.0};
        for (int s = 0; s < sps; ++s) {
            const double nu = f + s;
            Complex h{0.0, 0.0};
            for (std::size_t k = 0; k < m; ++k) {
                const double phase = -2.0 * kPi * nu * (static_cast<double>(k) - centre) / sps;
                h += taps[k] * Complex(std::cos(phase), std::sin(phase));
            }
            folded += h / static_cast<double>(sps);
        }
        report.max_folded_deviation = std::max(report.max_folded_deviation, std::abs(folded - peak) / peak);
    }
    return report;
}

IsiReport check_nyquist_isi(const FirFilter& filter)
{
    return check_nyquist_isi(filter.taps, filter.samples_per_symbol);
}

FrequencyResponse rc_response(RollOff alpha, double symbol_rate_hz)
{
    if (!(symbol_rate_hz > 0.0)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    return {[alpha, symbol_rate_hz](double f) { return Complex(rc_freq_response(f, alpha, symbol_rate_hz), 0.0); },
            (1.0 + alpha.value()) * symbol_rate_hz / 2.0};
}

FrequencyResponse rrc_response(RollOff alpha, double symbol_rate_hz)
{
    if (!(symbol_rate_hz > 0.0)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    return {[alpha, symbol_rate_hz](double f) {
                return Complex(std::sqrt(rc_freq_response(f, alpha, symbol_rate_hz)), 0.0);
            },
            (1.0 + alpha.value()) * symbol_rate_hz / 2.0};
}

FrequencyResponse flat_response(Complex value)
{
    return {[value](double) { return value; }, std::numeric_limits<double>::infinity()};
}

FrequencyResponse fir_response(std::vector<double> taps, double sample_rate_hz)
{
    if (taps.empty()) {
        throw InvalidArgument("filter needs at least one tap");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw InvalidArgument("sample rate must be positive");
    }
    return {[taps = std::move(taps), sample_rate_hz](double f) {
                const double ts = 1.0 / sample_rate_hz;
                const double centre = 0.5 * static_cast<double>(taps.size() - 1);
                Complex h{0.0, 0.0};
                for (std::size_t k = 0; k < taps.size(); ++k) {
                    const double phase = -2.0 * kPi * f * (static_cast<double>(k) - centre) * ts;
                    h += taps[k] * Complex(std::cos(phase), std::sin(phase));
                }
                return h * ts;
            },
            sample_rate_hz / 2.0};
}

FrequencyResponse cascade_response(std::span<const FrequencyResponse> parts)
{
    if (parts.empty()) {
        throw InvalidArgument("cascade needs at least one response");
    }
    std::vector<FrequencyResponse> owned(parts.begin(), parts.end());
    double limit = std::numeric_limits<double>::infinity();
    for (const auto& p : owned) {
        limit = std::min(limit, p.band_limit_hz());
    }
    return {[owned = std::move(owned)](double f) {
                Complex acc{1.0, 0.0};
                for (const auto& p : owned) {
                    acc *= p(f);
                }
                return acc;
            },
            limit};
}

void write_taps_csv(std::ostream& out, std::span<const double> taps)
{
    for (double v : taps) {
        out << fmt::format("{:.17g}\n", v);
    }
}

} // namespace pulselab
