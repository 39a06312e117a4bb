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

#include "pulselab/spectrum.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>

#include <fftw3.h>
#include <fmt/format.h>

#include "pulselab/errors.hpp"

namespace pulselab {

namespace {

// FFTW planning is not re-entrant; execution on distinct buffers is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

class Fft {
public:
    explicit Fft(std::size_t n)
        : n_(n), in_(fftw_alloc_complex(n)), out_(fftw_alloc_complex(n))
    {
        if (!in_ || !out_) {
            throw std::bad_alloc();
        }
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Fft()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    fftw_complex* input() noexcept { return in_.get(); }
    const fftw_complex* output() const noexcept { return out_.get(); }
    void run() noexcept { fftw_execute(plan_); }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::unique_ptr<fftw_complex, FftwFree> in_;
    std::unique_ptr<fftw_complex, FftwFree> out_;
    fftw_plan plan_ = nullptr;
};

std::vector<double> make_window(Window kind, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (kind == Window::Hann) {
        // Periodic Hann: tiles to a constant at 50% overlap.
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
        }
    }
    return w;
}

} // namespace

Window parse_window(std::string_view text)
{
    if (text == "hann") {
        return Window::Hann;
    }
    if (text == "rect" || text == "rectangular") {
        return Window::Rectangular;
    }
    throw InvalidArgument(fmt::format("unknown window: {}", text));
}

double PsdEstimate::total_power() const noexcept
{
    double acc = 0.0;
    for (double d : density) {
        acc += d;
    }
    return acc * resolution_hz;
}

PsdEstimate welch_psd(const IqSignal& signal, std::size_t segment_len, double overlap_fraction, Window window)
{
    if (signal.empty()) {
        throw InvalidArgument("empty signal");
    }
    if (segment_len < 2 || (segment_len & (segment_len - 1)) != 0) {
        throw InvalidArgument("segment length must be a power of two >= 2");
    }
    if (segment_len > signal.size()) {
        throw InvalidArgument("segment longer than signal");
    }
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
        throw InvalidArgument("overlap fraction must lie in [0, 1)");
    }

    const std::size_t n = segment_len;
    const auto hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - overlap_fraction))));
    const auto w = make_window(window, n);
    double w2 = 0.0;
    for (double v : w) {
        w2 += v * v;
    }

    Fft fft(n);
    std::vector<double> acc(n, 0.0);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + n <= signal.size(); start += hop) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex x = signal.samples[start + i] * w[i];
            fft.input()[i][0] = x.real();
            fft.input()[i][1] = x.imag();
        }
        fft.run();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& y = fft.output()[i];
            acc[i] += y[0] * y[0] + y[1] * y[1];
        }
        ++segments;
    }

    const double fs = signal.sample_rate_hz;
    const double scale = 1.0 / (fs * w2 * static_cast<double>(segments));
    PsdEstimate psd;
    psd.resolution_hz = fs / static_cast<double>(n);
    psd.n_segments = segments;
    psd.freqs_hz.resize(n);
    psd.density.resize(n);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        // fftshift: output bin (i + half) mod n lands at position i.
        const std::size_t src = (i + half) % n;
        psd.freqs_hz[i] = (static_cast<double>(i) - static_cast<double>(half)) * psd.resolution_hz;
        psd.density[i] = acc[src] * scale;
    }
    return psd;
}

double occupied_bandwidth(const PsdEstimate& psd, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw InvalidArgument("fraction must lie in (0, 1)");
    }
    if (psd.density.empty() || psd.density.size() != psd.freqs_hz.size() || !(psd.resolution_hz > 0.0)) {
        throw InvalidArgument("degenerate PSD");
    }
    const double df = psd.resolution_hz;
    std::vector<double> bin_power(psd.density.size());
    double total = 0.0;
    for (std::size_t i = 0; i < bin_power.size(); ++i) {
        if (psd.density[i] < 0.0) {
            throw InvalidArgument("negative PSD density");
        }
        bin_power[i] = psd.density[i] * df;
        total += bin_power[i];
    }
    if (!(total > 0.0)) {
        throw InvalidArgument("degenerate PSD");
    }
    const double tail = 0.5 * (1.0 - fraction) * total;

    // Walk inward from the low edge until the accumulated power reaches `tail`.
    double lower = psd.freqs_hz.front() - df / 2.0;
    {
        double cum = 0.0;
        for (std::size_t i = 0; i < bin_power.size(); ++i) {
            if (cum + bin_power[i] >= tail) {
                const double part = bin_power[i] > 0.0 ? (tail - cum) / bin_power[i] : 0.0;
                lower = psd.freqs_hz[i] - df / 2.0 + part * df;
                break;
            }
            cum += bin_power[i];
        }
    }
    double upper = psd.freqs_hz.back() + df / 2.0;
    {
        double cum = 0.0;
        for (std::size_t j = bin_power.size(); j-- > 0;) {
            if (cum + bin_power[j] >= tail) {
                const double part = bin_power[j] > 0.0 ? (tail - cum) / bin_power[j] : 0.0;
                upper = psd.freqs_hz[j] + df / 2.0 - part * df;
                break;
            }
            cum += bin_power[j];
        }
    }
    return upper - lower;
}

double bandwidth_efficiency(double bit_rate_bps, double obw_hz)
{
    if (!(bit_rate_bps > 0.0) || !(obw_hz > 0.0)) {
        throw InvalidArgument("bit rate and bandwidth must be positive");
    }
    return bit_rate_bps / obw_hz;
}

void write_psd_csv(std::ostream& out, const PsdEstimate& psd)
{
    out << "freq_hz,density\n";
    for (std::size_t i = 0; i < psd.density.size(); ++i) {
        out << fmt::format("{:.10g},{:.10g}\n", psd.freqs_hz[i], psd.density[i]);
    }
}

} // namespace pulselab
