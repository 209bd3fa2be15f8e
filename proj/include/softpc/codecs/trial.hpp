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

#include "softpc/codecs/codec.hpp"
#include "softpc/neural/autoencoder.hpp"

#include <memory>
#include <optional>

#include <cstdint>
#include <string>
#include <vector>

namespace softpc::codecs
{
    struct TransmissionReport
    {
        std::string codec;
        double snr_db = 0.0;
        channel::Equalization equalization = channel::Equalization::Post;
        bool precoding = false;
        channel::OverheadReport overhead;
        double chamfer_mean = 0.0;
        double chamfer_std = 0.0;
        std::uint64_t seed = 0;
        std::size_t samples = 0; // chamfer values averaged
        std::size_t outages = 0; // deep-fade clamps over all realizations
    };

    /// Columns: codec, snr_db, equalization, precoding, data_symbols, metadata_symbols,
    /// total_symbols, chamfer_mean, chamfer_std, seed.
    std::string report_csv_header();
    std::string to_csv(const TransmissionReport &r);

    /// Encodes once and averages Chamfer distance (in the cloud's original units)
    /// over n_realizations channel draws; realization t uses derive_seed(seed, {t}).
    /// chamfer_std is the population standard deviation.
    TransmissionReport run_codec_trial(const Codec &codec, const cloud::PointCloud &cloud,
                                       const channel::ChannelConfig &cfg, std::size_t n_realizations,
                                       std::uint64_t seed);

    /// Runs run_codec_trial per cloud (cloud i with derive_seed(seed, {i})) and pools
    /// every Chamfer value. Overhead columns hold the per-cloud mean, rounded.
    TransmissionReport evaluate_codec(const Codec &codec, const std::vector<cloud::PointCloud> &clouds,
                                      const channel::ChannelConfig &cfg, std::size_t n_realizations,
                                      std::uint64_t seed);

    /// evaluate_codec for several channel settings, encoding each cloud once.
    std::vector<TransmissionReport> evaluate_codec_grid(const Codec &codec, const std::vector<cloud::PointCloud> &clouds,
                                                        const std::vector<channel::ChannelConfig> &cfgs,
                                                        std::size_t n_realizations, std::uint64_t seed);

    /// Single-call helpers.
    TransmissionReport gnn_codec(const cloud::PointCloud &cloud, std::shared_ptr<const neural::ModelParams> model,
                                 const channel::ChannelConfig &cfg, std::uint64_t seed);
    TransmissionReport holocast_codec(const cloud::PointCloud &cloud, std::size_t block_size,
                                      const channel::ChannelConfig &cfg, std::optional<unsigned> givens_bits,
                                      std::uint64_t seed, std::size_t knn_k = 8);
    TransmissionReport softcast_codec(const cloud::PointCloud &cloud, std::size_t symbol_budget,
                                      const channel::ChannelConfig &cfg, std::uint64_t seed);
}
