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

#include "softpc/channel/channel.hpp"
#include "softpc/cloud/point_cloud.hpp"
#include "softpc/neural/adam.hpp"
#include "softpc/neural/autoencoder.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace softpc::neural
{
    /// Normalized coordinates and the KNN graph built on them.
    struct TrainingSample
    {
        Matrix target;
        cloud::KnnGraph graph;
        std::string id;
    };

    /// Normalizes the cloud and builds its graph. Throws if the size differs from the model's.
    TrainingSample prepare_sample(const cloud::PointCloud &cloud, const Architecture &arch);

    /// encode -> channel -> decode -> augmented Chamfer against the sample's target.
    /// With `accumulate`, gradients scaled by grad_scale are added to params' grads.
    double sample_loss(const TrainingSample &sample, ModelParams &params, const channel::ChannelConfig &cfg,
                       const channel::ChannelRealization &realization, bool accumulate = false,
                       double grad_scale = 1.0);

    struct TrainingConfig
    {
        channel::ChannelConfig channel;
        /// When set, each sample draws its training SNR uniformly from [lo, hi] dB.
        std::optional<std::pair<double, double>> snr_range_db;
        AdamConfig adam;
        /// Step decay: lr * factor^floor((epoch - 1) / every). every = 0 keeps lr fixed.
        std::size_t lr_decay_every = 0;
        double lr_decay_factor = 1.0;
        std::size_t epochs = 500; // total, counting epochs already done
        std::size_t batch_size = 10;
        std::uint64_t seed = 1;
    };

    struct TrainState
    {
        ModelParams params;
        AdamState adam;
        std::size_t epochs_done = 0;
    };

    TrainState make_train_state(const Architecture &arch, std::uint64_t init_seed);

    struct EpochStats
    {
        std::size_t epoch = 0; // 1-based
        double mean_loss = 0.0;
        double wall_time_s = 0.0;
    };

    using EpochCallback = std::function<void(const EpochStats &, const TrainState &)>;

    /// Runs epochs state.epochs_done + 1 .. cfg.epochs. The shuffle, channel draws and
    /// SNR draws of epoch e depend only on (cfg.seed, e), so a run resumed from a saved
    /// state reproduces an uninterrupted one. Throws NumericalError on a NaN loss.
    std::vector<EpochStats> train(const std::vector<cloud::PointCloud> &clouds, TrainState &state,
                                  const TrainingConfig &cfg, const EpochCallback &on_epoch = {});

    std::vector<EpochStats> train(const std::vector<TrainingSample> &samples, TrainState &state,
                                  const TrainingConfig &cfg, const EpochCallback &on_epoch = {});
}
