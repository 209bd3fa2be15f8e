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

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace softpc::channel
{
    using Complex = std::complex<double>;

    enum class FadingMode
    {
        Awgn,
        Rayleigh
    };

    enum class Equalization
    {
        Pre,  // transmitter multiplies by h*/|h|: y = |h| x + n
        Post, // receiver divides by h: y = x + n / h
    };

    std::string_view to_string(FadingMode m) noexcept;
    std::string_view to_string(Equalization e) noexcept;
    FadingMode parse_fading_mode(std::string_view s);
    Equalization parse_equalization(std::string_view s);

    struct ChannelConfig
    {
        double snr_db = 20.0; // +inf gives a noiseless channel
        FadingMode mode = FadingMode::Rayleigh;
        Equalization equalization = Equalization::Post;
        bool precoding = false;
        double avg_power = 1.0; // P, per real value

        /// sigma^2 = P * 10^(-snr_db / 10), variance per complex symbol.
        double noise_variance() const;
        void validate() const;

        static ChannelConfig noiseless(FadingMode mode = FadingMode::Rayleigh,
                                       Equalization eq = Equalization::Post, bool precoding = false);
    };

    /// Complex I/Q symbols carrying `source_len` reals; an odd tail is zero-padded in Q.
    struct SymbolStream
    {
        std::vector<Complex> symbols;
        std::size_t source_len = 0;
    };

    SymbolStream reals_to_symbols(std::span<const double> v);
    std::vector<double> symbols_to_reals(const SymbolStream &s);
    inline std::size_t symbols_for_reals(std::size_t reals) noexcept { return (reals + 1) / 2; }

    struct ChannelRealization
    {
        std::vector<Complex> h;
        std::vector<Complex> noise;
        std::optional<std::vector<std::size_t>> permutation; // symbol t uses channel use permutation[t]

        std::size_t size() const noexcept { return h.size(); }
    };

    /// Channel-use order by |h| descending, ties to the lower index.
    std::vector<std::size_t> precoding_permutation(std::span<const Complex> h);

    /// h_i ~ CN(0, 1) in Rayleigh mode (h_i = 1 for AWGN), noise_i ~ CN(0, sigma^2).
    /// Deterministic in seed.
    ChannelRealization draw_realization(const ChannelConfig &cfg, std::size_t m_symbols, std::uint64_t seed);

    inline constexpr double kDeepFadeFloor = 1e-12;

    /// Per-real effective gain and noise std seen by each transmitted real value,
    /// in source order. Needed by transmit_grad.
    struct TransmitTrace
    {
        std::vector<double> gain;
        std::vector<double> noise_std;
        std::size_t outages = 0; // post-equalization divisors clamped at the deep-fade floor
    };

    struct TransmitResult
    {
        std::vector<double> z_hat;
        TransmitTrace trace;
    };

    /// Sends reals over the channel as I/Q symbols and returns the equalized reals.
    TransmitResult transmit(std::span<const double> z, const ChannelConfig &cfg, const ChannelRealization &realization);

    /// Gradient with respect to z given the gradient with respect to z_hat.
    std::vector<double> transmit_grad(std::span<const double> upstream, const TransmitTrace &trace);
}
