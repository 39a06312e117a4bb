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

#include "pulselab/report.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "pulselab/channel.hpp"
#include "pulselab/errors.hpp"

namespace pulselab {

namespace {

std::string alpha_text(RollOff a)
{
    return fmt::format("{:g}", a.value());
}

std::ofstream open_out(const std::filesystem::path& p)
{
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + p.string());
    }
    return out;
}

nlohmann::json profile_to_json(const FilterProfile& p)
{
    if (p.kind == FilterProfile::Kind::Vsg8) {
        return {{"kind", "vsg8"}};
    }
    return {{"kind", "long"}, {"span_symbols", p.span_symbols}, {"samples_per_symbol", p.samples_per_symbol}};
}

FilterProfile profile_from_json(const nlohmann::json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "vsg8") {
        return FilterProfile::vsg8();
    }
    if (kind == "long") {
        return FilterProfile::long_filter(j.value("span_symbols", 32), j.value("samples_per_symbol", 16));
    }
    throw InvalidArgument("unknown filter profile: " + kind);
}

struct Series {
    const char* file;
    double (*value)(const MetricsRecord&);
};

} // namespace

void write_results_csv(std::ostream& out, const std::vector<MetricsRecord>& records)
{
    out << kResultsCsvHeader << '\n';
    for (const auto& r : records) {
        out << fmt::format("{},{},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", to_string(r.format),
                           to_string(r.filter_kind), alpha_text(r.alpha), r.errors.evm_pct_rms,
                           r.errors.mag_err_pct_rms, r.errors.phase_err_deg_rms, r.ber, r.obw_hz, r.bw_efficiency);
    }
}

nlohmann::json config_to_json(const SweepConfig& c)
{
    nlohmann::json j;
    for (auto f : c.formats) {
        j["formats"].push_back(std::string(to_string(f)));
    }
    for (auto k : c.filter_kinds) {
        j["filter_kinds"].push_back(std::string(to_string(k)));
    }
    for (auto a : c.alphas) {
        j["alphas"].push_back(a.value());
    }
    j["symbol_rate_hz"] = c.symbol_rate_hz;
    j["n_symbols"] = c.n_symbols;
    j["filter_profile"] = profile_to_json(c.filter_profile);
    j["spectrum_profile"] = profile_to_json(c.spectrum_profile);
    j["metrics_ebn0_db"] = c.metrics_ebn0_db ? nlohmann::json(*c.metrics_ebn0_db) : nlohmann::json(nullptr);
    j["ber_ebn0_db"] = c.ber_ebn0_db ? nlohmann::json(*c.ber_ebn0_db) : nlohmann::json(nullptr);
    j["ber_bits"] = c.ber_bits;
    j["psd_samples"] = c.psd_samples;
    j["psd_segment"] = c.psd_segment;
    j["psd_overlap"] = c.psd_overlap;
    j["pn"] = {{"degree", c.pn.degree}, {"taps", c.pn.taps}, {"seed", c.pn.seed}};
    j["master_seed"] = c.master_seed;
    return j;
}

SweepConfig config_from_json(const nlohmann::json& j)
{
    SweepConfig c;
    try {
        if (j.contains("formats")) {
            c.formats.clear();
            for (const auto& f : j["formats"]) {
                c.formats.push_back(parse_mod_format(f.get<std::string>()));
            }
        }
        if (j.contains("filter_kinds")) {
            c.filter_kinds.clear();
            for (const auto& k : j["filter_kinds"]) {
                c.filter_kinds.push_back(parse_filter_kind(k.get<std::string>()));
            }
        }
        if (j.contains("alphas")) {
            c.alphas.clear();
            for (const auto& a : j["alphas"]) {
                c.alphas.emplace_back(a.get<double>());
            }
        }
        c.symbol_rate_hz = j.value("symbol_rate_hz", c.symbol_rate_hz);
        c.n_symbols = j.value("n_symbols", c.n_symbols);
        if (j.contains("filter_profile")) {
            c.filter_profile = profile_from_json(j["filter_profile"]);
        }
        if (j.contains("spectrum_profile")) {
            c.spectrum_profile = profile_from_json(j["spectrum_profile"]);
        }
        if (j.contains("metrics_ebn0_db") && !j["metrics_ebn0_db"].is_null()) {
            c.metrics_ebn0_db = j["metrics_ebn0_db"].get<double>();
        }
        if (j.contains("ber_ebn0_db")) {
            c.ber_ebn0_db = j["ber_ebn0_db"].is_null() ? std::nullopt : std::optional(j["ber_ebn0_db"].get<double>());
        }
        c.ber_bits = j.value("ber_bits", c.ber_bits);
        c.psd_samples = j.value("psd_samples", c.psd_samples);
        c.psd_segment = j.value("psd_segment", c.psd_segment);
        c.psd_overlap = j.value("psd_overlap", c.psd_overlap);
        if (j.contains("pn")) {
            const auto& p = j["pn"];
            c.pn.degree = p.value("degree", c.pn.degree);
            c.pn.taps = p.value("taps", c.pn.taps);
            c.pn.seed = p.value("seed", c.pn.seed);
        }
        c.master_seed = j.value("master_seed", c.master_seed);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad sweep config: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json run_metadata(const SweepConfig& config, const std::vector<MetricsRecord>& records)
{
    nlohmann::json j;
    j["format_version"] = 1;
    j["software"] = {{"name", "pulselab"}, {"version", PULSELAB_VERSION}};
    j["config"] = config_to_json(config);
    j["rng_id"] = kRngId;
    j["symbol_map"] = "gray: b_I,b_Q 00->(+1+j)/sqrt2 01->(+1-j)/sqrt2 10->(-1+j)/sqrt2 11->(-1-j)/sqrt2";
    j["pn"] = {{"polynomial", config.pn.polynomial()}, {"seed", config.pn.seed}, {"topology", kLfsrTopology}};
    j["metrics"] = {{"instants", "symbol"}, {"reference", "decision-directed"}, {"pre_align", true},
                    {"obw_fraction", 0.99}, {"bit_rate_bps", 2.0 * config.symbol_rate_hz}};
    auto& points = j["points"];
    points = nlohmann::json::array();
    for (const auto& r : records) {
        const auto& m = r.metadata;
        points.push_back({{"format", to_string(r.format)},
                          {"filter", to_string(r.filter_kind)},
                          {"alpha", r.alpha.value()},
                          {"filter_profile", m.filter_profile},
                          {"spectrum_profile", m.spectrum_profile},
                          {"measurement_filter", m.measurement_filter},
                          {"metrics_seed", m.metrics_seed},
                          {"ber_seed", m.ber_seed},
                          {"edge_symbols_excluded", m.edge_symbols},
                          {"metric_symbols", m.metric_symbols},
                          {"ber_bits", m.ber_bits},
                          {"ber_errors", m.ber_errors},
                          {"psd_samples", m.psd_samples},
                          {"psd_segments", m.psd_segments}});
    }
    return j;
}

void write_sweep_outputs(const std::filesystem::path& out_dir, const SweepConfig& config,
                         const std::vector<MetricsRecord>& records)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    {
        auto out = open_out(out_dir / "results.csv");
        write_results_csv(out, records);
    }
    {
        auto out = open_out(out_dir / "metadata.json");
        out << run_metadata(config, records).dump(2) << '\n';
    }

    static constexpr Series series[] = {
        {"fig4_evm.csv", [](const MetricsRecord& r) { return r.errors.evm_pct_rms; }},
        {"fig5_mag_err.csv", [](const MetricsRecord& r) { return r.errors.mag_err_pct_rms; }},
        {"fig6_phase_err.csv", [](const MetricsRecord& r) { return r.errors.phase_err_deg_rms; }},
        {"fig7_bw_eff.csv", [](const MetricsRecord& r) { return r.bw_efficiency; }},
        {"fig8_ber.csv", [](const MetricsRecord& r) { return r.ber; }},
    };
    auto alphas = config.alphas;
    std::ranges::sort(alphas);
    for (const auto& s : series) {
        auto out = open_out(out_dir / s.file);
        out << "alpha";
        for (auto f : config.formats) {
            for (auto k : config.filter_kinds) {
                out << ',' << to_string(f) << '_' << to_string(k);
            }
        }
        out << '\n';
        for (auto a : alphas) {
            out << alpha_text(a);
            for (auto f : config.formats) {
                for (auto k : config.filter_kinds) {
                    const auto it = std::ranges::find_if(records, [&](const MetricsRecord& r) {
                        return r.format == f && r.filter_kind == k && r.alpha == a;
                    });
                    out << (it == records.end() ? std::string() : fmt::format(",{:.9g}", s.value(*it)));
                }
            }
            out << '\n';
        }
    }
    {
        auto out = open_out(out_dir / "table3_summary.txt");
        out << format_best_choices(best_choice_summary(records));
    }
}

std::string format_best_choices(const std::vector<BestChoice>& choices)
{
    std::string text = "Performance metric      | Best choice\n";
    text += "------------------------+------------------------------------------\n";
    for (const auto& c : choices) {
        std::string who;
        for (const auto& w : c.winners) {
            if (!who.empty()) {
                who += "; ";
            }
            who += fmt::format("{} with {} filter (alpha = {:g})", to_string(w.format), to_string(w.filter_kind),
                               w.alpha.value());
        }
        text += fmt::format("{:<24}| {} [{:.6g}]\n", c.metric, who, c.value);
    }
    return text;
}

} // namespace pulselab
