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

#include <cmath>
#include <set>

#include "doctest.h"
#include "pulselab/channel.hpp"
#include "pulselab/errors.hpp"

using namespace pulselab;

namespace {

IqSignal constant_signal(std::size_t n, Complex value, double rate = 1.0)
{
    return IqSignal(std::vector<Complex>(n, value), rate);
}

} // namespace

TEST_SUITE("channel")
{
    TEST_CASE("noiseless passthrough")
    {
        const IqSignal x({{1, 2}, {-0.5, 0.25}}, 8.0);
        ChannelConfig cfg;
        const auto y = awgn(x, cfg, 1.0);
        CHECK(y.samples == x.samples);
        CHECK(y.sample_rate_hz == 8.0);
        CHECK(noise_variance(cfg, 3.0) == 0.0);
    }

    TEST_CASE("noise variance formula")
    {
        ChannelConfig cfg;
        cfg.ebn0_db = 3.0;
        cfg.samples_per_symbol = 8;
        cfg.bits_per_symbol = 2;
        CHECK(noise_variance(cfg, 0.5) == doctest::Approx(0.5 * 8 / (2 * std::pow(10.0, 0.3))));
        CHECK_THROWS_AS((void)noise_variance(cfg, 0.0), InvalidArgument);
        CHECK_THROWS_AS((void)awgn(constant_signal(4, 1.0), cfg, -1.0), InvalidArgument);
        cfg.bits_per_symbol = 0;
        CHECK_THROWS_AS((void)noise_variance(cfg, 1.0), InvalidArgument);
    }

    TEST_CASE("injected noise statistics at 1e6 samples")
    {
        constexpr std::size_t n = 1'000'000;
        ChannelConfig cfg;
        cfg.ebn0_db = 4.0;
        cfg.samples_per_symbol = 4;
        cfg.seed = 2024;
        const Complex base(0.3, -0.7);
        const double power = std::norm(base);
        const auto y = awgn(constant_signal(n, base), cfg, power);
        const double sigma2 = power * 4 / (2 * std::pow(10.0, 0.4));

        double mi = 0.0;
        double mq = 0.0;
        double vi = 0.0;
        double vq = 0.0;
        for (const auto& s : y.samples) {
            const Complex e = s - base;
            mi += e.real();
            mq += e.imag();
            vi += e.real() * e.real();
            vq += e.imag() * e.imag();
        }
        mi /= n;
        mq /= n;
        vi = vi / n - mi * mi;
        vq = vq / n - mq * mq;
        const double sigma_rail = std::sqrt(sigma2 / 2.0);
        CHECK(std::abs(mi) < 4.0 * sigma_rail / std::sqrt(double(n)));
        CHECK(std::abs(mq) < 4.0 * sigma_rail / std::sqrt(double(n)));
        CHECK(std::abs(vi - sigma2 / 2.0) < 0.02 * sigma2 / 2.0);
        CHECK(std::abs(vq - sigma2 / 2.0) < 0.02 * sigma2 / 2.0);
        CHECK(std::abs((vi + vq) - sigma2) < 0.02 * sigma2);
    }

    TEST_CASE("seeded determinism")
    {
        ChannelConfig cfg;
        cfg.ebn0_db = 0.0;
        cfg.seed = 99;
        const auto x = constant_signal(1000, {1.0, 0.0});
        const auto a = awgn(x, cfg, 1.0);
        const auto b = awgn(x, cfg, 1.0);
        CHECK(a.samples == b.samples);
        cfg.seed = 100;
        const auto c = awgn(x, cfg, 1.0);
        CHECK(a.samples != c.samples);
    }

    TEST_CASE("impair")
    {
        const IqSignal x({{1, 0}, {0.5, -2}, {-3, 1}}, 1.0);
        const auto same = impair(x, 1.0, 0.0);
        CHECK(same.samples == x.samples);

        const auto rot = impair(IqSignal({{1, 0}}, 1.0), 1.0, 90.0);
        CHECK(std::abs(rot.samples[0] - Complex(0, 1)) < 1e-15);

        const auto twice = impair(x, 2.0, 0.0);
        CHECK(mean_power(twice) == doctest::Approx(4.0 * mean_power(x)));

        CHECK_THROWS_AS((void)impair(x, 0.0, 0.0), InvalidArgument);
        CHECK_THROWS_AS((void)impair(x, -1.0, 10.0), InvalidArgument);
    }

    TEST_CASE("impair inverse")
    {
        const IqSignal x({{1, 0}, {0.5, -2}, {-3, 1}, {0.01, 0.7}}, 1.0);
        for (double g : {0.1, 0.9, 1.7, 12.0}) {
            for (double p : {-170.0, -3.0, 0.5, 45.0, 179.0}) {
                const auto back = impair(impair(x, g, p), 1.0 / g, -p);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    CHECK(std::abs(back.samples[i] - x.samples[i]) < 1e-12);
                }
            }
        }
    }

    TEST_CASE("derived seeds are distinct and stable")
    {
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            seen.insert(derive_seed(42, i));
        }
        CHECK(seen.size() == 1000);
        CHECK(derive_seed(42, 7) == derive_seed(42, 7));
        CHECK(derive_seed(42, 7) != derive_seed(43, 7));
    }
}
