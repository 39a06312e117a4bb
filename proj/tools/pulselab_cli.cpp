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

// pulselab command-line front end.
//
// Exit codes: 0 success, 1 IO/runtime failure, 2 argument validation, 3 corrupt data.

#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "pulselab/channel.hpp"
#include "pulselab/errors.hpp"
#include "pulselab/harness.hpp"
#include "pulselab/iq_file.hpp"
#include "pulselab/metrics.hpp"
#include "pulselab/modem.hpp"
#include "pulselab/pn.hpp"
#include "pulselab/pulse_shaping.hpp"
#include "pulselab/report.hpp"
#include "pulselab/spectrum.hpp"

namespace {

using namespace pulselab;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCorrupt = 3;

struct ShapingArgs {
    std::string kind = "rrc";
    double alpha = 0.35;
    std::string profile = "long";
    int sps = 16;
    int span = 16;
    std::string norm = "peak";

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--kind", kind, "Pulse shape: rc or rrc")->capture_default_str();
        cmd.add_option("--alpha", alpha, "Roll-off factor in [0, 1]")->capture_default_str();
        cmd.add_option("--profile", profile, "Filter profile: long or vsg8")->capture_default_str();
        cmd.add_option("--sps", sps, "Samples per symbol (long profile)")->capture_default_str();
        cmd.add_option("--span", span, "Filter span in symbols (long profile)")->capture_default_str();
        cmd.add_option("--norm", norm, "Tap normalization: peak, energy or dc")->capture_default_str();
    }

    [[nodiscard]] FirFilter design() const
    {
        const auto k = parse_filter_kind(kind);
        const RollOff a(alpha);
        if (profile == "vsg8") {
            return design_vsg8(k, a);
        }
        if (profile != "long") {
            throw InvalidArgument("unknown profile: " + profile);
        }
        return design_fir(k, a, sps, span, parse_normalization(norm));
    }
};

struct PnArgs {
    int degree = 6;
    std::vector<int> taps{6, 1};
    std::uint32_t seed = 0x3F;

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--pn-degree", degree, "LFSR degree")->capture_default_str();
        cmd.add_option("--pn-taps", taps, "Feedback polynomial exponents")->delimiter(',')->capture_default_str();
        cmd.add_option("--pn-seed", seed, "Nonzero LFSR seed")->capture_default_str();
    }

    [[nodiscard]] LfsrConfig config() const { return {degree, taps, seed}; }
};

BitStream read_bits(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::vector<std::uint8_t> bits;
    for (char c; in.get(c);) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
            throw InvalidArgument("bit file may contain only 0, 1, commas and whitespace");
        }
    }
    return BitStream(std::move(bits));
}

void write_bits(const std::string& path, const BitStream& bits)
{
    std::ofstream out(path);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out << static_cast<char>('0' + bits[i]) << ((i + 1) % 64 == 0 ? "\n" : "");
    }
    out << '\n';
    if (!out) {
        throw IoError("cannot write " + path);
    }
}

std::ostream& output_stream(const std::string& path, std::ofstream& file)
{
    if (path.empty() || path == "-") {
        return std::cout;
    }
    file.open(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + path);
    }
    return file;
}

std::size_t auto_segment(std::size_t n)
{
    std::size_t seg = 4096;
    while (seg > 16 && seg * 8 > n) {
        seg /= 2;
    }
    return std::min(seg, std::bit_floor(n));
}

int cmd_design_filter(const ShapingArgs& shaping, bool vsg8_table, const std::string& out_path)
{
    const FirFilter filter = vsg8_table ? vsg_reference_taps(parse_filter_kind(shaping.kind)) : shaping.design();
    std::ofstream file;
    auto& out = output_stream(out_path, file);
    if (vsg8_table) {
        for (double v : filter.taps) {
            out << fmt::format("{:.6f}\n", v);
        }
    } else {
        write_taps_csv(out, filter.taps);
    }
    return 0;
}

struct ModulateArgs {
    std::string format = "qpsk";
    ShapingArgs shaping;
    PnArgs pn;
    std::string bits_in;
    std::string bits_out;
    std::size_t n_symbols = 256;
    double symbol_rate = 25000.0;
    std::optional<double> ebn0;
    std::uint64_t seed = 1;
    double gain = 1.0;
    double phase_deg = 0.0;
    std::string out;
};

int cmd_modulate(const ModulateArgs& a)
{
    const auto format = parse_mod_format(a.format);
    const FirFilter filter = a.shaping.design();
    const BitStream bits = a.bits_in.empty() ? generate_pn(a.pn.config(), 2 * a.n_symbols) : read_bits(a.bits_in);
    const auto frame = transmit(bits, format, filter, a.symbol_rate);
    IqSignal signal = frame.signal;
    if (a.ebn0) {
        ChannelConfig ch{a.ebn0, 2, filter.samples_per_symbol, a.seed, kRngId};
        signal = awgn(signal, ch, mean_power(signal));
    }
    if (a.gain != 1.0 || a.phase_deg != 0.0) {
        signal = impair(signal, a.gain, a.phase_deg);
    }
    const auto description =
        fmt::format("{} {} alpha={} profile={} sps={} taps={} symbols={} symbol_rate_hz={}", to_string(format),
                    to_string(filter.kind), filter.alpha.value(), a.shaping.profile, filter.samples_per_symbol,
                    filter.size(), frame.symbols.size(), a.symbol_rate);
    write_capture(a.out, signal, description);
    if (!a.bits_out.empty()) {
        write_bits(a.bits_out, bits);
    }
    std::cout << fmt::format("symbols: {}\nsamples: {}\nmean_power: {:.9g}\n", frame.symbols.size(), signal.size(),
                             mean_power(signal));
    return 0;
}

struct AnalyzeArgs {
    std::string in;
    std::string format = "qpsk";
    ShapingArgs shaping;
    std::string meas = "auto";
    std::size_t n_symbols = 0;
    bool no_align = false;
    std::string ref_bits;
    std::size_t segment = 0;
};

int cmd_analyze(const AnalyzeArgs& a)
{
    const auto format = parse_mod_format(a.format);
    const FirFilter tx = a.shaping.design();
    std::optional<FirFilter> meas;
    if (a.meas == "auto") {
        meas = measurement_filter_for(tx);
    } else if (a.meas == "rrc") {
        auto m = tx;
        if (tx.kind != FilterKind::RootRaisedCosine) {
            m = a.shaping.profile == "vsg8"
                    ? design_vsg8(FilterKind::RootRaisedCosine, tx.alpha)
                    : design_fir(FilterKind::RootRaisedCosine, tx.alpha, a.shaping.sps, a.shaping.span,
                                 parse_normalization(a.shaping.norm));
        }
        meas = m;
    } else if (a.meas != "off") {
        throw InvalidArgument("measurement filter must be auto, off or rrc");
    }

    const auto capture = read_capture(a.in);
    const auto& signal = capture.signal;
    const auto sps = static_cast<std::size_t>(tx.samples_per_symbol);
    if (signal.size() < tx.size()) {
        throw InvalidArgument("capture shorter than the transmit filter");
    }
    const std::size_t n_symbols = a.n_symbols ? a.n_symbols : (signal.size() - tx.size() + 1) / sps;
    const std::size_t edge = static_cast<std::size_t>(std::ceil(tx.span_symbols / 2.0));
    if (n_symbols <= 2 * edge) {
        throw InvalidArgument("capture too short for edge exclusion");
    }

    auto rx_cfg = receiver_for(tx, format, meas, n_symbols);
    rx_cfg.align = !a.no_align;
    const auto rx = demodulate(signal, rx_cfg);
    const std::size_t kept = n_symbols - 2 * edge;
    const std::vector<Complex> measured(rx.measured_symbols.begin() + static_cast<std::ptrdiff_t>(edge),
                                        rx.measured_symbols.begin() + static_cast<std::ptrdiff_t>(edge + kept));
    const auto reference = build_reference(std::vector<Complex>(
        rx.decided_symbols.begin() + static_cast<std::ptrdiff_t>(edge),
        rx.decided_symbols.begin() + static_cast<std::ptrdiff_t>(edge + kept)));
    const auto summary = error_metrics(measured, reference, !a.no_align);

    nlohmann::json out{{"evm_pct_rms", summary.evm_pct_rms},
                       {"mag_err_pct_rms", summary.mag_err_pct_rms},
                       {"phase_err_deg_rms", summary.phase_err_deg_rms},
                       {"n_symbols", summary.n_symbols},
                       {"measurement_filter", meas ? "rrc" : "off"}};
    if (!a.ref_bits.empty()) {
        const auto ref = read_bits(a.ref_bits);
        if (ref.size() < 2 * (edge + kept)) {
            throw InvalidArgument("reference bit file shorter than the analyzed symbols");
        }
        const auto count = bit_error_rate(ref.slice(2 * edge, 2 * kept), rx.decided_bits.slice(2 * edge, 2 * kept));
        out["ber"] = count.ber;
        out["bit_errors"] = count.errors;
        out["bits"] = count.total;
    }
    const std::size_t seg = a.segment ? a.segment : auto_segment(signal.size());
    out["obw_hz"] = occupied_bandwidth(welch_psd(signal, seg, 0.5, Window::Hann), 0.99);
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct PsdArgs {
    std::string in;
    std::size_t segment = 0;
    double overlap = 0.5;
    std::string window = "hann";
    std::string out;
};

int cmd_psd(const PsdArgs& a)
{
    const auto capture = read_capture(a.in);
    const std::size_t seg = a.segment ? a.segment : auto_segment(capture.signal.size());
    const auto psd = welch_psd(capture.signal, seg, a.overlap, parse_window(a.window));
    std::ofstream file;
    auto& out = output_stream(a.out, file);
    write_psd_csv(out, psd);
    if (&out != &std::cout) {
        std::cout << fmt::format("obw_99_hz: {:.9g}\nsegments: {}\nresolution_hz: {:.9g}\n",
                                 occupied_bandwidth(psd, 0.99), psd.n_segments, psd.resolution_hz);
    }
    return 0;
}

struct SweepArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    std::string profile;
    std::optional<std::size_t> ber_bits;
    std::optional<double> ebn0;
};

int cmd_sweep(const SweepArgs& a)
{
    SweepConfig config;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) {
            throw IoError("cannot read " + a.config_path);
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
        }
        config = config_from_json(j);
    }
    if (a.seed) {
        config.master_seed = *a.seed;
    }
    if (a.profile == "vsg8") {
        config.filter_profile = FilterProfile::vsg8();
    } else if (a.profile == "long") {
        config.filter_profile = FilterProfile::long_filter(16, 8);
    } else if (!a.profile.empty()) {
        throw InvalidArgument("unknown profile: " + a.profile);
    }
    if (a.ber_bits) {
        config.ber_bits = *a.ber_bits;
    }
    if (a.ebn0) {
        config.ber_ebn0_db = *a.ebn0;
    }
    config.validate();
    const auto records = run_sweep(config, a.workers);
    write_sweep_outputs(a.out_dir, config, records);
    std::cout << format_best_choices(best_choice_summary(records));
    return 0;
}

template <typename Fn>
int guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CorruptData& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCorrupt;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pulselab: QPSK/OQPSK pulse-shaping and modulation-quality laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PULSELAB_VERSION);

    ShapingArgs design;
    bool vsg8_table = false;
    std::string design_out;
    auto* design_cmd = app.add_subcommand("design-filter", "Write FIR tap coefficients, one per line");
    design.add_to(*design_cmd);
    design_cmd->add_flag("--vsg8", vsg8_table, "Emit the 8-tap signal-generator reference table");
    design_cmd->add_option("-o,--out", design_out, "Output CSV (default stdout)");

    ModulateArgs mod;
    auto* mod_cmd = app.add_subcommand("modulate", "Synthesize a shaped baseband capture");
    mod_cmd->add_option("--format", mod.format, "qpsk or oqpsk")->capture_default_str();
    mod.shaping.add_to(*mod_cmd);
    mod.pn.add_to(*mod_cmd);
    mod_cmd->add_option("--bits", mod.bits_in, "Text file of 0/1 bits instead of the PN stimulus");
    mod_cmd->add_option("--bits-out", mod.bits_out, "Save the transmitted bits as text");
    mod_cmd->add_option("--symbols", mod.n_symbols, "Symbols from the PN stimulus")->capture_default_str();
    mod_cmd->add_option("--symbol-rate", mod.symbol_rate, "Symbol rate in Hz")->capture_default_str();
    mod_cmd->add_option("--ebn0", mod.ebn0, "Add AWGN at this Eb/N0 (dB)");
    mod_cmd->add_option("--seed", mod.seed, "Noise seed")->capture_default_str();
    mod_cmd->add_option("--gain", mod.gain, "Impairment gain")->capture_default_str();
    mod_cmd->add_option("--phase", mod.phase_deg, "Impairment rotation in degrees")->capture_default_str();
    mod_cmd->add_option("-o,--out", mod.out, "Payload path (sidecar gets .json)")->required();

    AnalyzeArgs an;
    auto* an_cmd = app.add_subcommand("analyze", "Demodulate a capture and print metrics as JSON");
    an_cmd->add_option("-i,--in", an.in, "Capture payload")->required();
    an_cmd->add_option("--format", an.format, "qpsk or oqpsk")->capture_default_str();
    an.shaping.add_to(*an_cmd);
    an_cmd->add_option("--meas", an.meas, "Measurement filter: auto, off or rrc")->capture_default_str();
    an_cmd->add_option("--symbols", an.n_symbols, "Symbols in the capture (default: inferred)");
    an_cmd->add_flag("--no-align", an.no_align, "Skip complex-gain alignment");
    an_cmd->add_option("--ref-bits", an.ref_bits, "Transmitted bits for BER");
    an_cmd->add_option("--segment", an.segment, "PSD segment length (power of two)");

    PsdArgs psd;
    auto* psd_cmd = app.add_subcommand("psd", "Welch PSD of a capture as freq_hz,density CSV");
    psd_cmd->add_option("-i,--in", psd.in, "Capture payload")->required();
    psd_cmd->add_option("--segment", psd.segment, "Segment length (power of two)");
    psd_cmd->add_option("--overlap", psd.overlap, "Overlap fraction")->capture_default_str();
    psd_cmd->add_option("--window", psd.window, "hann or rect")->capture_default_str();
    psd_cmd->add_option("-o,--out", psd.out, "Output CSV (default stdout)");

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the format x filter x alpha sweep");
    sweep_cmd->add_option("--config", sw.config_path, "JSON sweep configuration");
    sweep_cmd->add_option("-o,--out", sw.out_dir, "Output directory")->required();
    sweep_cmd->add_option("--seed", sw.seed, "Master seed");
    sweep_cmd->add_option("--workers", sw.workers, "Worker threads (0 = all cores)")->capture_default_str();
    sweep_cmd->add_option("--profile", sw.profile, "Metric/BER filter profile: vsg8 or long");
    sweep_cmd->add_option("--ber-bits", sw.ber_bits, "Bits per BER run");
    sweep_cmd->add_option("--ebn0", sw.ebn0, "BER Eb/N0 in dB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (design_cmd->parsed()) {
        return guarded([&] { return cmd_design_filter(design, vsg8_table, design_out); });
    }
    if (mod_cmd->parsed()) {
        return guarded([&] { return cmd_modulate(mod); });
    }
    if (an_cmd->parsed()) {
        return guarded([&] { return cmd_analyze(an); });
    }
    if (psd_cmd->parsed()) {
        return guarded([&] { return cmd_psd(psd); });
    }
    if (sweep_cmd->parsed()) {
        return guarded([&] { return cmd_sweep(sw); });
    }
    return kExitUsage;
}
