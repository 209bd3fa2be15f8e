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

#include "softpc/cloud/knn_graph.hpp"
#include "softpc/neural/layers.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace softpc::neural
{
    inline constexpr std::size_t kStages = 3;

    /// Shape of the graph autoencoder. Every model works on clouds of exactly
    /// n_points points.
    struct Architecture
    {
        std::size_t n_points = 512;
        std::size_t knn_k = 8;
        std::array<std::size_t, kStages> channels{24, 36, 12};
        std::array<double, kStages> ratios{0.75, 0.5, 0.5};
        std::size_t decoder_hidden = 48;
        double leaky_slope = 0.01;
        double avg_power = 1.0;

        /// m: vertices left after the three pooling stages.
        std::size_t latent_vertices() const;
        /// L: channels of the last stage.
        std::size_t latent_channels() const { return channels.back(); }
        std::size_t latent_size() const { return latent_vertices() * latent_channels(); }
        void validate() const;

        bool operator==(const Architecture &) const = default;
    };

    /// Encoder (three graph-conv / leaky ReLU / Top-K stages) and MLP decoder parameters.
    struct ModelParams
    {
        Architecture arch;
        std::array<Tensor2, kStages> conv_weight; // c_in x c_out
        std::array<Tensor2, kStages> conv_bias;   // 1 x c_out
        std::array<Tensor2, kStages> pool_proj;   // 1 x c_out
        std::array<Tensor2, 3> dense_weight;      // out x in
        std::array<Tensor2, 3> dense_bias;        // 1 x out

        /// Every tensor in a fixed order (encoder stages, then decoder layers).
        std::vector<Tensor2 *> tensors();
        std::vector<const Tensor2 *> tensors() const;
        void zero_grad();
    };

    /// Glorot-uniform weights, zero biases; deterministic in seed.
    ModelParams init_params(const Architecture &arch, std::uint64_t seed);

    struct LatentCode
    {
        Matrix z; // m x L
        std::size_t m() const noexcept { return z.rows(); }
        std::size_t L() const noexcept { return z.cols(); }
    };

    struct StageCache
    {
        Matrix input;
        cloud::KnnGraph graph;
        GcnCache gcn;
        Matrix pre_activation;
        Matrix activation;
        TopkResult pool;
    };

    struct EncoderCache
    {
        std::array<StageCache, kStages> stages;
        Matrix z_raw;
    };

    LatentCode encode(const Matrix &points, const cloud::KnnGraph &graph, const ModelParams &params,
                      EncoderCache *cache = nullptr);

    /// Accumulates parameter gradients into params and returns d/d(points).
    Matrix encode_backward(const Matrix &dz, const EncoderCache &cache, ModelParams &params);

    struct DecoderCache
    {
        std::vector<double> input;
        std::vector<double> pre1, act1, pre2, act2, out;
    };

    /// Decodes a flattened (row-major m x L) latent to an n_points x 3 matrix in (-1, 1).
    Matrix decode(std::span<const double> z_hat, const ModelParams &params, DecoderCache *cache = nullptr);

    /// `dpoints` is n_points x 3. Accumulates parameter gradients and returns d/d(z_hat).
    std::vector<double> decode_backward(const Matrix &dpoints, const DecoderCache &cache, ModelParams &params);
}
