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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pulselab {

using Complex = std::complex<double>;

/// Complex baseband samples at a fixed sample rate.
struct IqSignal {
    std::vector<Complex> samples;
    double sample_rate_hz = 1.0;

    IqSignal() = default;
    IqSignal(std::vector<Complex> samples, double sample_rate_hz);

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
};

/// Information bits, each element 0 or 1.
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::vector<std::uint8_t> bits);

    [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

    /// Bits [first, first + count).
    [[nodiscard]] BitStream slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Constellation symbols at the symbol rate.
struct SymbolStream {
    std::vector<Complex> symbols;
    double symbol_rate_hz = 1.0;

    SymbolStream() = default;
    SymbolStream(std::vector<Complex> symbols, double symbol_rate_hz);

    [[nodiscard]] std::size_t size() const noexcept { return symbols.size(); }
};

enum class ModFormat { Qpsk, Oqpsk };
enum class FilterKind { RaisedCosine, RootRaisedCosine };

/// Excess-bandwidth (roll-off) factor, 0 <= alpha <= 1.
class RollOff {
public:
    constexpr RollOff() = default;
    explicit RollOff(double alpha);

    [[nodiscard]] constexpr double value() const noexcept { return alpha_; }

    friend constexpr auto operator<=>(const RollOff&, const RollOff&) = default;

private:
    double alpha_ = 0.0;
};

[[nodiscard]] std::string_view to_string(ModFormat f) noexcept;
[[nodiscard]] std::string_view to_string(FilterKind k) noexcept;
/// Accepts "qpsk"/"oqpsk" in any case.
[[nodiscard]] ModFormat parse_mod_format(std::string_view text);
/// Accepts "rc"/"rrc" (and the long names) in any case.
[[nodiscard]] FilterKind parse_filter_kind(std::string_view text);

[[nodiscard]] double mean_power(std::span<const Complex> samples);
[[nodiscard]] double mean_power(const IqSignal& signal);

/// Scales by a positive real factor so that mean_power() == 1.
[[nodiscard]] IqSignal scale_to_unit_power(const IqSignal& signal);

} // namespace pulselab
