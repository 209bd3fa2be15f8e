// SPDX-License-Identifier: Apache-2.0
//
// softpc: soft (near-analog) wireless delivery of 3D point clouds
// Copyright (C) 2026 The softpc Authors
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
// ------------------------------------------------------------------------

#include "doctest.h"
#include "oracles.hpp"

#include "softpc/channel/channel.hpp"
#include "softpc/channel/overhead.hpp"
#include "softpc/error.hpp"

#include <limits>

using namespace softpc;
using namespace softpc::channel;

namespace
{
    std::vector<double> random_reals(std::size_t n, Rng &rng)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> v(n);
        for (double &x : v)
            x = g(rng);
        return v;
    }

    ChannelConfig config(double snr, FadingMode mode, Equalization eq, bool pc)
    {
        ChannelConfig c;
        c.snr_db = snr;
        c.mode = mode;
        c.equalization = eq;
        c.precoding = pc;
        return c;
    }
}

TEST_SUITE("channel")
{
    TEST_CASE("I/Q mapping")
    {
        std::vector<double> v{1, 2, 3, 4};
        SymbolStream s = reals_to_symbols(v);
        CHECK(s.symbols == std::vector<Complex>{{1, 2}, {3, 4}});
        CHECK(s.source_len == 4);

        std::vector<double> odd{5};
        SymbolStream t = reals_to_symbols(odd);
        CHECK(t.symbols == std::vector<Complex>{{5, 0}});
        CHECK(t.source_len == 1);

        Rng rng(1);
        auto r = random_reals(101, rng);
        SymbolStream u = reals_to_symbols(r);
        CHECK(u.symbols.size() == 51);
        CHECK(symbols_to_reals(u) == r);
    }

    TEST_CASE("config validation and noise variance")
    {
        ChannelConfig c;
        c.snr_db = 20;
        CHECK(c.noise_variance() == doctest::Approx(0.01));
        c.avg_power = 2.0;
        CHECK(c.noise_variance() == doctest::Approx(0.02));
        CHECK(ChannelConfig::noiseless().noise_variance() == 0.0);
        c.avg_power = 0.0;
        CHECK_THROWS_AS(c.validate(), ParameterError);
        CHECK(parse_equalization("pre") == Equalization::Pre);
        CHECK(parse_fading_mode("awgn") == FadingMode::Awgn);
        CHECK_THROWS_AS(parse_fading_mode("rician"), ParameterError);
    }

    TEST_CASE("realization determinism, AWGN gains and precoding order")
    {
        auto cfg = config(10, FadingMode::Rayleigh, Equalization::Post, true);
        ChannelRealization a = draw_realization(cfg, 50, 9);
        ChannelRealization b = draw_realization(cfg, 50, 9);
        CHECK(a.h == b.h);
        CHECK(a.noise == b.noise);
        REQUIRE(a.permutation.has_value());
        for (std::size_t t = 1; t < 50; ++t)
            CHECK(std::abs(a.h[(*a.permutation)[t - 1]]) >= std::abs(a.h[(*a.permutation)[t]]));

        ChannelRealization w = draw_realization(config(10, FadingMode::Awgn, Equalization::Post, false), 20, 9);
        for (const Complex &h : w.h)
            CHECK(h == Complex(1.0, 0.0));
        CHECK_FALSE(w.permutation.has_value());

        std::vector<Complex> h{{0.5, 0}, {0, 2.0}, {1.0, 0}};
        CHECK(precoding_permutation(h) == std::vector<std::size_t>{1, 2, 0});
        std::vector<Complex> tied{{1, 0}, {0, 1}, {2, 0}};
        CHECK(precoding_permutation(tied) == std::vector<std::size_t>{2, 0, 1});
    }

    TEST_CASE("Monte-Carlo moments of fading and noise")
    {
        auto cfg = config(7, FadingMode::Rayleigh, Equalization::Post, false);
        const std::size_t m = 200000;
        ChannelRealization r = draw_realization(cfg, m, 2024);
        double h2 = 0.0, n2 = 0.0, n_re = 0.0, n_im = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
            h2 += std::norm(r.h[i]);
            n2 += std::norm(r.noise[i]);
            n_re += r.noise[i].real() * r.noise[i].real();
            n_im += r.noise[i].imag() * r.noise[i].imag();
        }
        const double sigma2 = cfg.noise_variance();
        CHECK(std::abs(h2 / m - 1.0) < 0.02);
        CHECK(std::abs(n2 / m / sigma2 - 1.0) < 0.02);
        CHECK(std::abs(n_re / m / (sigma2 / 2) - 1.0) < 0.02);
        CHECK(std::abs(n_im / m / (sigma2 / 2) - 1.0) < 0.02);
    }

    TEST_CASE("AWGN per-real noise variance at 20 dB")
    {
        auto cfg = config(20, FadingMode::Awgn, Equalization::Post, false);
        std::vector<double> z(1000000, 0.25);
        ChannelRealization r = draw_realization(cfg, z.size() / 2, 77);
        auto out = transmit(z, cfg, r);
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            mean += out.z_hat[i] - z[i];
        mean /= static_cast<double>(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            var += (out.z_hat[i] - z[i] - mean) * (out.z_hat[i] - z[i] - mean);
        var /= static_cast<double>(z.size() - 1);
        CHECK(std::abs(var / 0.005 - 1.0) < 0.05);
    }

    TEST_CASE("noiseless channel behaviour")
    {
        Rng rng(3);
        auto z = random_reals(37, rng);
        for (bool pc : {false, true})
        {
            auto post = ChannelConfig::noiseless(FadingMode::Rayleigh, Equalization::Post, pc);
            auto out = transmit(z, post, draw_realization(post, 19, 5));
            CHECK(out.z_hat == z);

            // Pre-equalization with unit-modulus fading is the identity.
            auto pre = ChannelConfig::noiseless(FadingMode::Rayleigh, Equalization::Pre, pc);
            ChannelRealization unit = draw_realization(pre, 19, 5);
            for (auto &h : unit.h)
                h = {0.6, 0.8};
            auto out_pre = transmit(z, pre, unit);
            for (std::size_t i = 0; i < z.size(); ++i)
                CHECK(out_pre.z_hat[i] == doctest::Approx(z[i]).epsilon(1e-15));

            // General fading scales each symbol by |h|.
            ChannelRealization rr = draw_realization(pre, 19, 5);
            auto scaled = transmit(z, pre, rr);
            for (std::size_t i = 0; i < z.size(); ++i)
            {
                const std::size_t use = rr.permutation ? (*rr.permutation)[i / 2] : i / 2;
                CHECK(scaled.z_hat[i] == doctest::Approx(std::abs(rr.h[use]) * z[i]).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("precoding is a no-op over AWGN")
    {
        Rng rng(4);
        auto z = random_reals(64, rng);
        auto off = config(5, FadingMode::Awgn, Equalization::Post, false);
        auto on = config(5, FadingMode::Awgn, Equalization::Post, true);
        for (auto eq : {Equalization::Post, Equalization::Pre})
        {
            off.equalization = on.equalization = eq;
            auto a = transmit(z, off, draw_realization(off, 32, 12));
            auto b = transmit(z, on, draw_realization(on, 32, 12));
            CHECK(a.z_hat == b.z_hat);
        }
    }

    TEST_CASE("precoded symbols meet the strongest channels")
    {
        auto cfg = config(std::numeric_limits<double>::infinity(), FadingMode::Rayleigh, Equalization::Pre, true);
        ChannelRealization r;
        r.h = {{0.5, 0}, {0, 2.0}, {1.0, 0}};
        r.noise.assign(3, {0, 0});
        r.permutation = precoding_permutation(r.h);
        std::vector<double> z{1, 1, 1, 1, 1, 1};
        auto out = transmit(z, cfg, r);
        CHECK(out.z_hat == std::vector<double>{2, 2, 1, 1, 0.5, 0.5});
        CHECK(out.trace.gain == std::vector<double>{2, 2, 1, 1, 0.5, 0.5});
    }

    TEST_CASE("post-equalization noise trace and deep-fade clamp")
    {
        auto cfg = config(10, FadingMode::Rayleigh, Equalization::Post, false);
        ChannelRealization r;
        r.h = {{0, 0}, {0, 0.5}};
        r.noise = {{0.1, 0.1}, {0.2, 0}};
        std::vector<double> z{1, 2, 3, 4};
        auto out = transmit(z, cfg, r);
        CHECK(out.trace.outages == 1);
        for (double v : out.z_hat)
            CHECK(std::isfinite(v));
        const double s = std::sqrt(cfg.noise_variance() / 2);
        CHECK(out.trace.noise_std[2] == doctest::Approx(s / 0.5));
        CHECK(out.trace.gain[2] == 1.0);
        // x + n/h with n/h = 0.2 / 0.5i = -0.4i
        CHECK(out.z_hat[2] == doctest::Approx(3.0));
        CHECK(out.z_hat[3] == doctest::Approx(3.6));

        cfg.equalization = Equalization::Pre;
        auto pre = transmit(z, cfg, r);
        CHECK(pre.trace.noise_std[0] == doctest::Approx(s));
        CHECK(pre.trace.outages == 0);
    }

    TEST_CASE("transmit_grad")
    {
        Rng rng(5);
        auto up = random_reals(6, rng);
        auto post = config(10, FadingMode::Rayleigh, Equalization::Post, true);
        auto pre = config(10, FadingMode::Rayleigh, Equalization::Pre, false);
        std::vector<double> z{1, 2, 3, 4, 5, 6};
        auto out_post = transmit(z, post, draw_realization(post, 3, 1));
        CHECK(transmit_grad(up, out_post.trace) == up);

        ChannelRealization r;
        r.h = {{1, 0}, {0, 2}, {1, 0}};
        r.noise.assign(3, {0, 0});
        auto out_pre = transmit(z, pre, r);
        auto g = transmit_grad(up, out_pre.trace);
        CHECK(g[2] == doctest::Approx(2 * up[2]));
        CHECK(g[3] == doctest::Approx(2 * up[3]));
        CHECK(g[0] == doctest::Approx(up[0]));

        std::vector<double> short_up(5, 1.0);
        CHECK_THROWS_AS(transmit_grad(short_up, out_pre.trace), ParameterError);
    }

    TEST_CASE("transmit_grad matches finite differences")
    {
        Rng rng(6);
        int instance = 0;
        for (auto eq : {Equalization::Pre, Equalization::Post})
            for (bool pc : {false, true})
                for (int trial = 0; trial < 6; ++trial, ++instance)
                {
                    auto cfg = config(5, FadingMode::Rayleigh, eq, pc);
                    const std::size_t n = 9 + static_cast<std::size_t>(trial);
                    ChannelRealization r = draw_realization(cfg, symbols_for_reals(n), 100 + instance);
                    Matrix w = oracle::random_matrix(1, n, rng);
                    Matrix z = oracle::random_matrix(1, n, rng);
                    auto f = [&](const Matrix &x)
                    {
                        auto out = transmit(x.values(), cfg, r);
                        return oracle::dot(w, Matrix(1, n, out.z_hat));
                    };
                    Matrix num = oracle::finite_difference(f, z);
                    auto out = transmit(z.values(), cfg, r);
                    Matrix ana(1, n, transmit_grad(w.values(), out.trace));
                    CHECK(oracle::relative_error(ana, num) < 1e-4);
                }
        CHECK(instance >= 20);
    }

    TEST_CASE("overhead counting")
    {
        CHECK(count_overhead(1024, {}) == OverheadReport{512, 0, 512});
        CHECK(count_overhead(900, {300 * 300, 0}) == OverheadReport{450, 45000, 45450});
        const std::uint64_t angles = 300 * 299 / 2;
        CHECK(angles == 44850);
        CHECK(count_overhead(900, {0, angles * 5}).metadata_symbols == 112125);
        CHECK(count_overhead(3, {3, 3}) == OverheadReport{2, 4, 6});
        CHECK(overhead_csv_header() == "data_symbols,metadata_symbols,total_symbols");
        CHECK(to_csv(OverheadReport{1, 2, 3}) == "1,2,3");
    }
}
