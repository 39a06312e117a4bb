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

#include "pulselab/iq_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "json.hpp"
#include "pulselab/errors.hpp"

namespace pulselab {

namespace {

static_assert(sizeof(float) == 4);

std::uint32_t to_le(std::uint32_t v) noexcept
{
    if constexpr (std::endian::native == std::endian::big) {
        return __builtin_bswap32(v);
    }
    return v;
}

void put_f32(std::vector<char>& buf, double value)
{
    const auto f = static_cast<float>(value);
    const std::uint32_t bits = to_le(std::bit_cast<std::uint32_t>(f));
    char raw[4];
    std::memcpy(raw, &bits, 4);
    buf.insert(buf.end(), raw, raw + 4);
}

double get_f32(const char* p) noexcept
{
    std::uint32_t bits;
    std::memcpy(&bits, p, 4);
    return std::bit_cast<float>(to_le(bits));
}

} // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& payload)
{
    auto p = payload;
    return p.replace_extension(".json");
}

void write_capture(const std::filesystem::path& payload, const IqSignal& signal, const std::string& description)
{
    if (signal.empty()) {
        throw InvalidArgument("empty signal");
    }
    if (sidecar_path(payload) == payload) {
        throw InvalidArgument("capture payload must not use the .json extension");
    }
    std::vector<char> buf;
    buf.reserve(8 * signal.size());
    for (const auto& s : signal.samples) {
        put_f32(buf, s.real());
        put_f32(buf, s.imag());
    }
    {
        std::ofstream out(payload, std::ios::binary);
        if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
            throw IoError("cannot write " + payload.string());
        }
    }
    nlohmann::json meta{{"sample_rate_hz", signal.sample_rate_hz},
                        {"n_samples", signal.size()},
                        {"description", description},
                        {"created_by", std::string("pulselab ") + PULSELAB_VERSION},
                        {"format_version", kCaptureFormatVersion}};
    std::ofstream side(sidecar_path(payload), std::ios::binary);
    if (!side || !(side << meta.dump(2) << '\n')) {
        throw IoError("cannot write " + sidecar_path(payload).string());
    }
}

Capture read_capture(const std::filesystem::path& payload)
{
    std::ifstream side(sidecar_path(payload), std::ios::binary);
    if (!side) {
        throw IoError("cannot read " + sidecar_path(payload).string());
    }
    CaptureInfo info;
    try {
        const auto meta = nlohmann::json::parse(side);
        info.sample_rate_hz = meta.at("sample_rate_hz").get<double>();
        info.n_samples = meta.at("n_samples").get<std::size_t>();
        info.description = meta.value("description", std::string());
        info.created_by = meta.value("created_by", std::string());
        info.format_version = meta.at("format_version").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw CorruptData(std::string("corrupt capture: bad sidecar (") + e.what() + ")");
    }
    if (info.format_version != kCaptureFormatVersion) {
        throw CorruptData("corrupt capture: unsupported format_version");
    }
    if (!(info.sample_rate_hz > 0.0) || info.n_samples == 0) {
        throw CorruptData("corrupt capture: invalid sidecar values");
    }

    std::ifstream in(payload, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + payload.string());
    }
    const std::vector<char> buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (buf.size() != 8 * info.n_samples) {
        throw CorruptData("corrupt capture: payload size does not match sidecar n_samples");
    }
    std::vector<Complex> samples(info.n_samples);
    for (std::size_t i = 0; i < info.n_samples; ++i) {
        samples[i] = {get_f32(buf.data() + 8 * i), get_f32(buf.data() + 8 * i + 4)};
    }
    return {IqSignal(std::move(samples), info.sample_rate_hz), std::move(info)};
}

} // namespace pulselab
