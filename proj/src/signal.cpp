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

#include "pulselab/signal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "pulselab/errors.hpp"

namespace pulselab {

namespace {

std::string lower(std::string_view text)
{
    std::string out(text);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

IqSignal::IqSignal(std::vector<Complex> s, double rate) : samples(std::move(s)), sample_rate_hz(rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidArgument("sample rate must be positive");
    }
}

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
{
    if (std::ranges::any_of(bits_, [](std::uint8_t b) { return b > 1; })) {
        throw InvalidArgument("bit values must be 0 or 1");
    }
}

BitStream BitStream::slice(std::size_t first, std::size_t count) const
{
    if (first + count > bits_.size()) {
        throw InvalidArgument("bit slice out of range");
    }
    return BitStream(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(first),
                                                bits_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

SymbolStream::SymbolStream(std::vector<Complex> s, double rate) : symbols(std::move(s)), symbol_rate_hz(rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidArgument("symbol rate must be positive");
    }
}

RollOff::RollOff(double alpha) : alpha_(alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("roll-off factor must lie in [0, 1]");
    }
}

std::string_view to_string(ModFormat f) noexcept
{
    return f == ModFormat::Qpsk ? "QPSK" : "OQPSK";
}

std::string_view to_string(FilterKind k) noexcept
{
    return k == FilterKind::RaisedCosine ? "RC" : "RRC";
}

ModFormat parse_mod_format(std::string_view text)
{
    const auto t = lower(text);
    if (t == "qpsk") {
        return ModFormat::Qpsk;
    }
    if (t == "oqpsk") {
        return ModFormat::Oqpsk;
    }
    throw InvalidArgument("unknown modulation format: " + std::string(text));
}

FilterKind parse_filter_kind(std::string_view text)
{
    const auto t = lower(text);
    if (t == "rc" || t == "raised-cosine" || t == "raisedcosine") {
        return FilterKind::RaisedCosine;
    }
    if (t == "rrc" || t == "root-raised-cosine" || t == "rootraisedcosine") {
        return FilterKind::RootRaisedCosine;
    }
    throw InvalidArgument("unknown filter kind: " + std::string(text));
}

double mean_power(std::span<const Complex> samples)
{
    if (samples.empty()) {
        throw InvalidArgument("empty signal");
    }
    double acc = 0.0;
    for (const auto& s : samples) {
        acc += std::norm(s);
    }
    return acc / static_cast<double>(samples.size());
}

double mean_power(const IqSignal& signal)
{
    return mean_power(std::span<const Complex>(signal.samples));
}

IqSignal scale_to_unit_power(const IqSignal& signal)
{
    const double p = mean_power(signal);
    if (!(p > 0.0)) {
        throw InvalidArgument("cannot normalize a zero-power signal");
    }
    const double k = 1.0 / std::sqrt(p);
    IqSignal out = signal;
    for (auto& s : out.samples) {
        s *= k;
    }
    return out;
}

} // namespace pulselab
