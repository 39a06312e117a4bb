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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "pulselab/harness.hpp"
#include "pulselab/metrics.hpp"
#include "pulselab/pn.hpp"
#include "pulselab/pulse_shaping.hpp"
#include "pulselab/spectrum.hpp"

using namespace pulselab;
namespace fs = std::filesystem;

namespace {

const double kAlphas[] = {0.1, 0.22, 0.35, 0.7, 1.0};

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, std::string what)
    {
        if (!ok) {
            pass = false;
            notes.push_back(std::move(what));
        }
    }
};

std::string series_name(ModFormat f, FilterKind k)
{
    return fmt::format("{}/{}", to_string(f), to_string(k));
}

// Lazily computed default sweep shared by criteria 5-8.
const std::vector<MetricsRecord>& default_sweep()
{
    static const std::vector<MetricsRecord> records = run_sweep(SweepConfig{});
    return records;
}

std::map<std::string, std::vector<const MetricsRecord*>> by_series(const std::vector<MetricsRecord>& recs)
{
    std::map<std::string, std::vector<const MetricsRecord*>> out;
    for (const auto& r : recs) {
        out[series_name(r.format, r.filter_kind)].push_back(&r);
    }
    return out;
}

Verdict filter_identity()
{
    Verdict v;
    constexpr int sps = 16;
    for (double a : kAlphas) {
        const auto rrc = design_fir(FilterKind::RootRaisedCosine, RollOff(a), sps, 32);
        std::vector<double> c(2 * rrc.size() - 1, 0.0);
        for (std::size_t i = 0; i < rrc.size(); ++i) {
            for (std::size_t j = 0; j < rrc.size(); ++j) {
                c[i + j] += rrc.taps[i] * rrc.taps[j];
            }
        }
        const double peak = *std::max_element(c.begin(), c.end());
        const double centre = 0.5 * static_cast<double>(c.size() - 1);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double t = (static_cast<double>(i) - centre) / sps;
            worst = std::max(worst, std::abs(c[i] / peak - rc_impulse(t, RollOff(a))));
        }
        v.require(worst <= 1e-3, fmt::format("RRC*RRC vs RC at alpha={}: max error {:.3e}", a, worst));

        // Long RC FIR transform against the closed-form spectrum over |f| <= F/2.
        const double rs = 25000.0;
        const auto rc = design_fir(FilterKind::RaisedCosine, RollOff(a), sps, 32);
        const auto h = fir_response(rc.taps, rs * sps);
        double rel = 0.0;
        for (double f = 0.0; f <= rs / 2.0; f += rs / 500.0) {
            const double g = rc_freq_response(f, RollOff(a), rs);
            rel = std::max(rel, std::abs(std::abs(h(f)) - g) / g);
        }
        v.require(rel <= 1e-2, fmt::format("RC transform at alpha={}: relative error {:.3e}", a, rel));
    }
    return v;
}

Verdict zero_isi()
{
    Verdict v;
    for (double a : kAlphas) {
        const auto rc = design_fir(FilterKind::RaisedCosine, RollOff(a), 16, 32);
        const auto r = check_nyquist_isi(rc);
        v.require(r.max_folded_deviation <= 1e-3,
                  fmt::format("folded deviation at alpha={}: {:.3e}", a, r.max_folded_deviation));
        v.require(r.worst_symbol_crossing <= 1e-10,
                  fmt::format("symbol crossing at alpha={}: {:.3e}", a, r.worst_symbol_crossing));
    }
    return v;
}

Verdict singularities()
{
    Verdict v;
    const struct {
        const char* name;
        double value;
        double oracle;
        double closed;
    } cases[] = {
        {"rc(0.5, 1)", rc_impulse(0.5, RollOff(1.0)),
         oracle::numeric_limit([](long double t) { return oracle::rc_raw(t, 1.0L); }, 0.5L), 0.5},
        {"rrc(0, 0.35)", rrc_impulse(0.0, RollOff(0.35)),
         oracle::numeric_limit([](long double t) { return oracle::rrc_raw(t, 0.35L); }, 0.0L),
         1.0 - 0.35 + 1.4 / std::numbers::pi},
        {"rrc(1, 0.25)", rrc_impulse(1.0, RollOff(0.25)),
         oracle::numeric_limit([](long double t) { return oracle::rrc_raw(t, 0.25L); }, 1.0L),
         0.25 / std::numbers::sqrt2 *
             ((1.0 + 2.0 / std::numbers::pi) * std::sin(std::numbers::pi) +
              (1.0 - 2.0 / std::numbers::pi) * std::cos(std::numbers::pi))},
    };
    for (const auto& c : cases) {
        v.require(std::abs(c.value - c.oracle) <= 1e-9,
                  fmt::format("{} = {:.12f}, numeric limit {:.12f}", c.name, c.value, c.oracle));
        v.require(std::abs(c.value - c.closed) <= 1e-9,
                  fmt::format("{} = {:.12f}, closed form {:.12f}", c.name, c.value, c.closed));
    }
    return v;
}

Verdict reference_taps()
{
    Verdict v;
    const std::vector<std::string> rc = {"0.015609", "0.174413", "0.588622", "1.000000",
                                         "1.000000", "0.588622", "0.174413", "0.015609"};
    const std::vector<std::string> rrc = {"0.004490", "0.143258", "0.560131", "1.000000",
                                          "1.000000", "0.560131", "0.143258", "0.004490"};
    for (const auto& [kind, want] : {std::pair{FilterKind::RaisedCosine, rc}, {FilterKind::RootRaisedCosine, rrc}}) {
        const auto f = vsg_reference_taps(kind);
        v.require(f.size() == 8, "tap count");
        for (std::size_t i = 0; i < std::min<std::size_t>(8, f.size()); ++i) {
            const auto got = fmt::format("{:.6f}", f.taps[i]);
            v.require(got == want[i], fmt::format("{} tap {}: {} != {}", to_string(kind), i, got, want[i]));
        }
    }
    return v;
}

Verdict table_two()
{
    Verdict v;
    // Reference occupied bandwidths in kHz; alpha = 0.22 has no entry.
    const std::map<std::pair<std::string, double>, double> table = {
        {{"QPSK/RC", 0.1}, 24.78},   {{"QPSK/RC", 0.35}, 26.17},   {{"QPSK/RC", 0.7}, 30.45},
        {{"QPSK/RC", 1.0}, 33.11},   {{"QPSK/RRC", 0.1}, 25.50},   {{"QPSK/RRC", 0.35}, 27.90},
        {{"QPSK/RRC", 0.7}, 34.08},  {{"QPSK/RRC", 1.0}, 39.78},   {{"OQPSK/RC", 0.1}, 24.12},
        {{"OQPSK/RC", 0.35}, 25.89}, {{"OQPSK/RC", 0.7}, 29.38},   {{"OQPSK/RC", 1.0}, 33.87},
        {{"OQPSK/RRC", 0.1}, 24.60}, {{"OQPSK/RRC", 0.35}, 28.91}, {{"OQPSK/RRC", 0.7}, 34.76},
        {{"OQPSK/RRC", 1.0}, 40.25},
    };
    std::size_t matched = 0;
    double worst = 0.0;
    for (const auto& r : default_sweep()) {
        const auto it = table.find({series_name(r.format, r.filter_kind), r.alpha.value()});
        if (it == table.end()) {
            continue;
        }
        ++matched;
        const double table_hz = it->second * 1000.0;
        const double obw_rel = r.obw_hz / table_hz - 1.0;
        const double eff_rel = r.bw_efficiency / (50.0 / it->second) - 1.0;
        worst = std::max({worst, std::abs(obw_rel), std::abs(eff_rel)});
        v.require(std::abs(obw_rel) <= 0.15, fmt::format("{} alpha={}: OBW {:.0f} Hz vs {:.0f} Hz", it->first.first,
                                                         it->first.second, r.obw_hz, table_hz));
        v.require(std::abs(eff_rel) <= 0.15,
                  fmt::format("{} alpha={}: efficiency {:.3f}", it->first.first, it->first.second, r.bw_efficiency));
    }
    v.require(matched == 16, fmt::format("only {} of 16 table entries simulated", matched));
    v.notes.push_back(fmt::format("worst relative deviation {:.1f}%", 100.0 * worst));
    return v;
}

Verdict error_trends()
{
    Verdict v;
    for (const auto& [name, recs] : by_series(default_sweep())) {
        const struct {
            const char* metric;
            double (*get)(const MetricsRecord&);
        } metrics[] = {
            {"EVM", [](const MetricsRecord& r) { return r.errors.evm_pct_rms; }},
            {"magnitude error", [](const MetricsRecord& r) { return r.errors.mag_err_pct_rms; }},
            {"phase error", [](const MetricsRecord& r) { return r.errors.phase_err_deg_rms; }},
        };
        for (const auto& m : metrics) {
            std::map<double, double> at;
            for (const auto* r : recs) {
                at[r->alpha.value()] = m.get(*r);
            }
            v.require(at[0.1] > at[0.22] && at[0.22] > at[0.35],
                      fmt::format("{} {} not strictly falling over 0.1/0.22/0.35: {:.4g} {:.4g} {:.4g}", name,
                                  m.metric, at[0.1], at[0.22], at[0.35]));
            const double hi = std::max({at[0.35], at[0.7], at[1.0]});
            const double lo = std::min({at[0.35], at[0.7], at[1.0]});
            v.require(hi - lo < 0.25 * at[0.35],
                      fmt::format("{} {} spread over 0.35..1.0 is {:.1f}% of the 0.35 value ({:.4g} {:.4g} {:.4g})",
                                  name, m.metric, 100.0 * (hi - lo) / at[0.35], at[0.35], at[0.7], at[1.0]));
        }
    }
    return v;
}

Verdict efficiency_trend()
{
    Verdict v;
    for (const auto& [name, recs] : by_series(default_sweep())) {
        for (std::size_t i = 1; i < recs.size(); ++i) {
            v.require(recs[i]->bw_efficiency < recs[i - 1]->bw_efficiency,
                      fmt::format("{}: efficiency {:.4f} at alpha={} not below {:.4f} at alpha={}", name,
                                  recs[i]->bw_efficiency, recs[i]->alpha.value(), recs[i - 1]->bw_efficiency,
                                  recs[i - 1]->alpha.value()));
        }
    }
    return v;
}

Verdict ber_oracle()
{
    Verdict v;
    const double p = oracle::q_function(std::sqrt(2.0 * std::pow(10.0, 0.6)));

    // Near-ideal matched RRC pair.
    SweepConfig c;
    c.formats = {ModFormat::Qpsk};
    c.filter_kinds = {FilterKind::RootRaisedCosine};
    c.filter_profile = FilterProfile::long_filter(32, 8);
    c.ber_bits = 1'000'000;
    c.ber_ebn0_db = 6.0;
    c.psd_samples = 1U << 14;
    for (const auto& r : run_sweep(c)) {
        const double n = static_cast<double>(r.metadata.ber_bits);
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        v.require(r.metadata.ber_bits >= 1'000'000, "fewer than 1e6 bits");
        v.require(std::abs(r.ber - p) <= 3.0 * sigma,
                  fmt::format("alpha={}: BER {:.4e} vs {:.4e} (3 sigma = {:.2e})", r.alpha.value(), r.ber, p,
                              3.0 * sigma));
    }

    // Noiseless BER at every sweep point, both filter profiles.
    for (const auto& profile : {FilterProfile::vsg8(), FilterProfile::long_filter(32, 16)}) {
        SweepConfig quiet;
        quiet.filter_profile = profile;
        quiet.ber_ebn0_db = std::nullopt;
        quiet.ber_bits = 100'000;
        quiet.psd_samples = 1U << 14;
        for (const auto& r : run_sweep(quiet)) {
            v.require(r.ber == 0.0, fmt::format("noiseless {} {} alpha={}: BER {}", profile.describe(),
                                                series_name(r.format, r.filter_kind), r.alpha.value(), r.ber));
        }
    }

    // Truncated 8-tap filters at fixed Eb/N0.
    for (const auto& [name, recs] : by_series(default_sweep())) {
        for (std::size_t i = 1; i < recs.size(); ++i) {
            if (recs[i]->alpha.value() > 0.7 + 1e-12) {
                break;
            }
            v.require(recs[i]->ber <= recs[i - 1]->ber,
                      fmt::format("{}: BER {:.4e} at alpha={} above {:.4e} at alpha={}", name, recs[i]->ber,
                                  recs[i]->alpha.value(), recs[i - 1]->ber, recs[i - 1]->alpha.value()));
        }
    }
    return v;
}

Verdict metric_oracles()
{
    Verdict v;
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> ref = {{h, h}, {h, -h}, {-h, h}, {-h, -h}};
    const double deg = std::numbers::pi / 180.0;

    std::vector<Complex> rot;
    std::vector<Complex> gain;
    std::vector<Complex> skewed;
    for (const auto& z : ref) {
        rot.push_back(z * std::polar(1.0, deg));
        gain.push_back(1.02 * z);
        skewed.push_back(z * std::polar(0.8, -25.0 * deg));
    }
    const auto r1 = error_metrics(rot, ref, false);
    v.require(std::abs(r1.evm_pct_rms - 1.745) < 5e-4, fmt::format("rotation EVM {:.6f}", r1.evm_pct_rms));
    v.require(std::abs(r1.phase_err_deg_rms - 1.0) < 5e-4, fmt::format("rotation phase {:.6f}", r1.phase_err_deg_rms));
    v.require(r1.mag_err_pct_rms <= 0.02, fmt::format("rotation magnitude {:.6f}", r1.mag_err_pct_rms));

    const auto r2 = error_metrics(gain, ref, false);
    v.require(std::abs(r2.evm_pct_rms - 2.0) < 5e-4, fmt::format("gain EVM {:.6f}", r2.evm_pct_rms));
    v.require(std::abs(r2.mag_err_pct_rms - 2.0) < 5e-4, fmt::format("gain magnitude {:.6f}", r2.mag_err_pct_rms));
    v.require(r2.phase_err_deg_rms < 5e-4, fmt::format("gain phase {:.6f}", r2.phase_err_deg_rms));

    const Complex c = align(skewed, ref);
    const Complex want = std::polar(1.0 / 0.8, 25.0 * deg);
    v.require(std::abs(c - want) <= 1e-10, fmt::format("align error {:.3e}", std::abs(c - want)));
    return v;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(PULSELAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism()
{
    Verdict v;
    const auto root = fs::temp_directory_path() / "pulselab_acceptance";
    fs::remove_all(root);
    const auto a = root / "a";
    const auto b = root / "b";
    v.require(run_cli("sweep --seed 42 -o " + a.string()) == 0, "first sweep failed");
    v.require(run_cli("sweep --seed 42 --workers 1 -o " + b.string()) == 0, "second sweep failed");
    std::size_t compared = 0;
    if (fs::exists(a)) {
        for (const auto& e : fs::directory_iterator(a)) {
            const auto name = e.path().filename();
            const auto ext = name.extension();
            if (ext != ".csv" && ext != ".json") {
                continue;
            }
            ++compared;
            v.require(fs::exists(b / name) && slurp(e.path()) == slurp(b / name),
                      fmt::format("{} differs", name.string()));
        }
    }
    v.require(compared >= 7, fmt::format("only {} output files compared", compared));
    return v;
}

Verdict pn_suite()
{
    Verdict v;
    const auto bits = generate_pn(LfsrConfig{}, 63 * 3);
    std::vector<int> seq(bits.bits().begin(), bits.bits().end());
    const auto period = oracle::sequence_period(seq);
    v.require(period == 63, fmt::format("period {}", period));
    std::size_t ones = 0;
    for (std::size_t i = 0; i < 63; ++i) {
        ones += bits[i];
    }
    v.require(ones == 32, fmt::format("{} ones, {} zeros", ones, 63 - ones));
    for (std::uint32_t seed = 1; seed < 64; ++seed) {
        if (oracle::lfsr_cycle_length_x6_x_1(seed) != 63) {
            v.require(false, fmt::format("seed {} is not on the full cycle", seed));
        }
    }
    bool rejected = false;
    try {
        LfsrConfig zero;
        zero.seed = 0;
        (void)generate_pn(zero, 10);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    v.require(rejected, "zero seed accepted");
    return v;
}

} // namespace

int main()
{
    const struct {
        int id;
        const char* title;
        std::function<Verdict()> check;
    } criteria[] = {
        {1, "filter identity", filter_identity},
        {2, "zero ISI", zero_isi},
        {3, "singularity values", singularities},
        {4, "reference tap table", reference_taps},
        {5, "occupied bandwidth table", table_two},
        {6, "error metric trends", error_trends},
        {7, "bandwidth efficiency trend", efficiency_trend},
        {8, "BER oracle", ber_oracle},
        {9, "metric oracles", metric_oracles},
        {10, "determinism", determinism},
        {11, "PN sequence", pn_suite},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fmt::print("{} {:2d} {} ({:.1f} s)\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs);
        for (const auto& n : v.notes) {
            fmt::print("        {}\n", n);
        }
        failed += v.pass ? 0 : 1;
    }
    fmt::print("{} of {} criteria passed\n", std::size(criteria) - static_cast<std::size_t>(failed),
               std::size(criteria));
    return failed == 0 ? 0 : 1;
}
