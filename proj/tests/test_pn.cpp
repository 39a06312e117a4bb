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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pulselab/errors.hpp"
#include "pulselab/pn.hpp"

using namespace pulselab;

TEST_SUITE("pn")
{
    TEST_CASE("default degree-6 sequence matches the recurrence oracle")
    {
        const auto bits = generate_pn(LfsrConfig{}, 200);
        const auto expected = oracle::m_sequence_x6_x_1(0x3F, 200);
        for (std::size_t i = 0; i < 200; ++i) {
            CHECK(static_cast<int>(bits[i]) == expected[i]);
        }
    }

    TEST_CASE("period 63 by brute-force cycle detection")
    {
        const auto bits = generate_pn(LfsrConfig{}, 126);
        std::vector<int> s(bits.bits().begin(), bits.bits().end());
        CHECK(oracle::sequence_period(s) == 63);
        // Every nonzero seed lies on the single 63-state cycle.
        for (std::uint32_t seed = 1; seed < 64; ++seed) {
            CHECK(oracle::lfsr_cycle_length_x6_x_1(seed) == 63);
        }
    }

    TEST_CASE("balance and window properties over one period")
    {
        const auto bits = generate_pn(LfsrConfig{}, 63 + 5);
        const auto ones = std::count(bits.bits().begin(), bits.bits().begin() + 63, std::uint8_t{1});
        CHECK(ones == 32);
        CHECK(63 - ones == 31);
        std::set<unsigned> windows;
        for (std::size_t i = 0; i < 63; ++i) {
            unsigned w = 0;
            for (std::size_t j = 0; j < 6; ++j) {
                w = (w << 1) | bits[i + j];
            }
            windows.insert(w);
        }
        CHECK(windows.size() == 63);
        CHECK(windows.count(0) == 0);
    }

    TEST_CASE("prefix property")
    {
        const auto long_run = generate_pn(LfsrConfig{}, 500);
        for (std::size_t n : {1U, 2U, 63U, 64U, 499U}) {
            CHECK(generate_pn(LfsrConfig{}, n) == long_run.slice(0, n));
        }
    }

    TEST_CASE("errors and metadata")
    {
        LfsrConfig zero;
        zero.seed = 0;
        CHECK_THROWS_WITH_AS(generate_pn(zero, 10), "degenerate LFSR seed", InvalidArgument);
        CHECK_THROWS_AS(generate_pn(LfsrConfig{}, 0), InvalidArgument);
        CHECK(LfsrConfig{}.polynomial() == "x^6+x+1");
        // A different primitive polynomial, x^7 + x^6 + 1, still gives a maximal sequence.
        LfsrConfig seven{7, {7, 6}, 1};
        const auto b = generate_pn(seven, 254);
        std::vector<int> s(b.bits().begin(), b.bits().end());
        CHECK(oracle::sequence_period(s) == 127);
    }
}
