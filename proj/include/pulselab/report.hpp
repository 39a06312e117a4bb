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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pulselab/harness.hpp"
#include "json.hpp"

namespace pulselab {

inline constexpr const char* kResultsCsvHeader =
    "format,filter,alpha,evm_pct_rms,mag_err_pct_rms,phase_err_deg_rms,ber,obw_hz,bw_eff_bps_per_hz";

void write_results_csv(std::ostream& out, const std::vector<MetricsRecord>& records);

[[nodiscard]] nlohmann::json config_to_json(const SweepConfig& config);
/// Missing keys keep their defaults.
[[nodiscard]] SweepConfig config_from_json(const nlohmann::json& j);

/// Config echo, software version, Gray map, LFSR description and per-point metadata.
[[nodiscard]] nlohmann::json run_metadata(const SweepConfig& config, const std::vector<MetricsRecord>& records);

/// Writes results.csv, metadata.json, fig4_evm.csv .. fig8_ber.csv and table3_summary.txt.
void write_sweep_outputs(const std::filesystem::path& out_dir, const SweepConfig& config,
                         const std::vector<MetricsRecord>& records);

[[nodiscard]] std::string format_best_choices(const std::vector<BestChoice>& choices);

} // namespace pulselab
