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

#include "pulselab/metrics.hpp"

#include <cmath>
#include <numbers>

#include "pulselab/errors.hpp"
#include "pulselab/modem.hpp"

namespace pulselab {

Complex align(std::span<const Complex> measured, std::span<const Complex> reference)
{
    if (measured.size() != reference.size() || measured.empty()) {
        throw InvalidArgument("align needs equal, non-empty sequences");
    }
    Complex cross{0.0, 0.0};
    double energy = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        cross += reference[k] * std::conj(measured[k]);
        energy += std::norm(measured[k]);
    }
    if (!(energy > 0.0)) {
        throw InvalidArgument("cannot align an all-zero measurement");
    }
    return cross / energy;
}

ErrorSummary error_metrics(std::span<const Complex> measured, std::span<const Complex> reference, bool pre_align)
{
    if (measured.size() != reference.size() || measured.empty()) {
        throw InvalidArgument("error metrics need equal, non-empty sequences");
    }
    const Complex gain = pre_align ? align(measured, reference) : Complex{1.0, 0.0};

    double err2 = 0.0;
    double mag2 = 0.0;
    double phase2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const Complex r = reference[k];
        if (r == Complex{}) {
            throw InvalidArgument("undefined phase reference");
        }
        const Complex m = gain * measured[k];
        err2 += std::norm(m - r);
        const double dm = std::abs(m) - std::abs(r);
        mag2 += dm * dm;
        // arg(m * conj(r)) lies in [-pi, pi]; map -pi onto +pi for the (-180, 180] convention.
        double dphi = std::arg(m * std::conj(r));
        if (dphi <= -std::numbers::pi) {
            dphi += 2.0 * std::numbers::pi;
        }
        phase2 += dphi * dphi;
        ref2 += std::norm(r);
    }
    const auto n = static_cast<double>(measured.size());
    const double ref_rms = std::sqrt(ref2 / n);
    ErrorSummary s;
    s.evm_pct_rms = 100.0 * std::sqrt(err2 / n) / ref_rms;
    s.mag_err_pct_rms = 100.0 * std::sqrt(mag2 / n) / ref_rms;
    s.phase_err_deg_rms = std::sqrt(phase2 / n) * 180.0 / std::numbers::pi;
    s.n_symbols = measured.size();
    return s;
}

std::vector<Complex> build_reference(std::span<const Complex> decided_symbols)
{
    for (const auto& z : decided_symbols) {
        if (std::abs(z - decide_qpsk(z)) > 1e-9) {
            throw InvalidArgument("decided symbol is not a constellation point");
        }
    }
    return {decided_symbols.begin(), decided_symbols.end()};
}

BerCount bit_error_rate(const BitStream& tx_bits, const BitStream& rx_bits)
{
    if (tx_bits.size() != rx_bits.size() || tx_bits.size() == 0) {
        throw InvalidArgument("bit streams must have equal, non-zero length");
    }
    BerCount c;
    c.total = tx_bits.size();
    for (std::size_t i = 0; i < c.total; ++i) {
        c.errors += tx_bits[i] != rx_bits[i] ? 1U : 0U;
    }
    c.ber = static_cast<double>(c.errors) / static_cast<double>(c.total);
    return c;
}

} // namespace pulselab
