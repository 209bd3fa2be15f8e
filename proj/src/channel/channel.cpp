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

#include "softpc/channel/channel.hpp"
#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace softpc::channel
{
    std::string_view to_string(FadingMode m) noexcept
    {
        return m == FadingMode::Awgn ? "awgn" : "rayleigh";
    }

    std::string_view to_string(Equalization e) noexcept
    {
        return e == Equalization::Pre ? "pre" : "post";
    }

    FadingMode parse_fading_mode(std::string_view s)
    {
        if (s == "awgn")
            return FadingMode::Awgn;
        if (s == "rayleigh")
            return FadingMode::Rayleigh;
        throw ParameterError("unknown fading mode '" + std::string(s) + "' (expected awgn|rayleigh)");
    }

    Equalization parse_equalization(std::string_view s)
    {
        if (s == "pre")
            return Equalization::Pre;
        if (s == "post")
            return Equalization::Post;
        throw ParameterError("unknown equalization '" + std::string(s) + "' (expected pre|post)");
    }

    double ChannelConfig::noise_variance() const
    {
        if (std::isinf(snr_db) && snr_db > 0)
            return 0.0;
        return avg_power * std::pow(10.0, -snr_db / 10.0);
    }

    void ChannelConfig::validate() const
    {
        if (!(avg_power > 0.0) || !std::isfinite(avg_power))
            throw ParameterError("ChannelConfig: average power must be positive");
        if (std::isnan(snr_db) || (std::isinf(snr_db) && snr_db < 0))
            throw ParameterError("ChannelConfig: SNR must be a number or +inf");
    }

    ChannelConfig ChannelConfig::noiseless(FadingMode mode, Equalization eq, bool precoding)
    {
        ChannelConfig c;
        c.snr_db = std::numeric_limits<double>::infinity();
        c.mode = mode;
        c.equalization = eq;
        c.precoding = precoding;
        return c;
    }

    SymbolStream reals_to_symbols(std::span<const double> v)
    {
        SymbolStream s;
        s.source_len = v.size();
        s.symbols.resize(symbols_for_reals(v.size()));
        for (std::size_t t = 0; t < s.symbols.size(); ++t)
        {
            const double re = v[2 * t];
            const double im = 2 * t + 1 < v.size() ? v[2 * t + 1] : 0.0;
            s.symbols[t] = {re, im};
        }
        return s;
    }

    std::vector<double> symbols_to_reals(const SymbolStream &s)
    {
        if (symbols_for_reals(s.source_len) != s.symbols.size())
            throw ParameterError("symbols_to_reals: source length inconsistent with symbol count");
        std::vector<double> v(s.source_len);
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = k % 2 == 0 ? s.symbols[k / 2].real() : s.symbols[k / 2].imag();
        return v;
    }

    std::vector<std::size_t> precoding_permutation(std::span<const Complex> h)
    {
        std::vector<std::size_t> perm(h.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b)
                         { return std::abs(h[a]) > std::abs(h[b]); });
        return perm;
    }

    ChannelRealization draw_realization(const ChannelConfig &cfg, std::size_t m_symbols, std::uint64_t seed)
    {
        cfg.validate();
        if (m_symbols < 1)
            throw ParameterError("draw_realization: need at least one symbol");
        Rng rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        ChannelRealization r;
        r.h.resize(m_symbols, Complex(1.0, 0.0));
        if (cfg.mode == FadingMode::Rayleigh)
        {
            const double s = std::sqrt(0.5);
            for (auto &h : r.h)
            {
                const double re = g(rng);
                const double im = g(rng);
                h = {s * re, s * im};
            }
        }
        const double ns = std::sqrt(cfg.noise_variance() / 2.0);
        r.noise.resize(m_symbols);
        for (auto &n : r.noise)
        {
            const double re = g(rng);
            const double im = g(rng);
            n = {ns * re, ns * im};
        }
        if (cfg.precoding)
            r.permutation = precoding_permutation(r.h);
        return r;
    }

    TransmitResult transmit(std::span<const double> z, const ChannelConfig &cfg, const ChannelRealization &realization)
    {
        SymbolStream tx = reals_to_symbols(z);
        const std::size_t m = tx.symbols.size();
        if (realization.size() < m || realization.noise.size() < m)
            throw ParameterError("transmit: realization has " + std::to_string(realization.size()) +
                                 " channel uses, need " + std::to_string(m));
        const auto *perm = realization.permutation ? &*realization.permutation : nullptr;
        if (perm && perm->size() < m)
            throw ParameterError("transmit: permutation shorter than the symbol stream");

        const double sigma = std::sqrt(cfg.noise_variance());
        TransmitResult out;
        out.trace.gain.resize(z.size());
        out.trace.noise_std.resize(z.size());
        SymbolStream rx{std::vector<Complex>(m), tx.source_len};
        for (std::size_t t = 0; t < m; ++t)
        {
            // the precoder sends symbol t over the t-th strongest channel use; the
            // receiver reads it back from the same use, which undoes the permutation
            const std::size_t use = perm ? (*perm)[t] : t;
            const Complex h = realization.h[use];
            const Complex n = realization.noise[use];
            const double mag = std::abs(h);
            double gain, nstd;
            if (cfg.equalization == Equalization::Pre)
            {
                rx.symbols[t] = mag * tx.symbols[t] + n;
                gain = mag;
                nstd = sigma / std::sqrt(2.0);
            }
            else
            {
                Complex divisor = h;
                if (mag < kDeepFadeFloor)
                {
                    divisor = mag > 0.0 ? h * (kDeepFadeFloor / mag) : Complex(kDeepFadeFloor, 0.0);
                    ++out.trace.outages;
                }
                // (h x + n) / h written as x + n / h so a noiseless channel is exact
                rx.symbols[t] = tx.symbols[t] + n / divisor;
                gain = 1.0;
                nstd = sigma / (std::sqrt(2.0) * std::abs(divisor));
            }
            for (std::size_t k = 2 * t; k < std::min(2 * t + 2, z.size()); ++k)
            {
                out.trace.gain[k] = gain;
                out.trace.noise_std[k] = nstd;
            }
        }
        out.z_hat = symbols_to_reals(rx);
        return out;
    }

    std::vector<double> transmit_grad(std::span<const double> upstream, const TransmitTrace &trace)
    {
        if (upstream.size() != trace.gain.size())
            throw ParameterError("transmit_grad: upstream length " + std::to_string(upstream.size()) +
                                 " does not match trace length " + std::to_string(trace.gain.size()));
        std::vector<double> g(upstream.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            g[k] = upstream[k] * trace.gain[k];
        return g;
    }
}
