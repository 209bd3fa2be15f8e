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

#include "softpc/neural/trainer.hpp"
#include "softpc/cloud/chamfer.hpp"
#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>

namespace softpc::neural
{
    namespace
    {
        constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;
        constexpr std::uint64_t kChannelStream = 0x4348414eULL;
        constexpr std::uint64_t kSnrStream = 0x534e52ULL;

        bool grads_finite(const ModelParams &params)
        {
            for (const Tensor2 *t : params.tensors())
                if (!all_finite(t->grad))
                    return false;
            return true;
        }
    }

    TrainingSample prepare_sample(const cloud::PointCloud &cloud, const Architecture &arch)
    {
        if (cloud.size() != arch.n_points)
            throw ParameterError("cloud '" + cloud.id() + "' has " + std::to_string(cloud.size()) +
                                 " points, model expects " + std::to_string(arch.n_points));
        auto [normalized, affine] = cloud::normalize(cloud);
        TrainingSample s{normalized.points(), cloud::build_knn_graph(normalized, arch.knn_k), cloud.id()};
        return s;
    }

    double sample_loss(const TrainingSample &sample, ModelParams &params, const channel::ChannelConfig &cfg,
                       const channel::ChannelRealization &realization, bool accumulate, double grad_scale)
    {
        EncoderCache ecache;
        LatentCode code = encode(sample.target, sample.graph, params, accumulate ? &ecache : nullptr);
        channel::TransmitResult tx = channel::transmit(code.z.values(), cfg, realization);
        DecoderCache dcache;
        Matrix decoded = decode(tx.z_hat, params, accumulate ? &dcache : nullptr);

        const cloud::PointCloud target(sample.target);
        if (!all_finite(decoded))
            return std::numeric_limits<double>::quiet_NaN();
        const cloud::PointCloud recon(decoded);
        if (!accumulate)
            return cloud::chamfer_distance(target, recon);

        cloud::ChamferWithGradient cg = cloud::chamfer_with_gradient(target, recon);
        cg.gradient *= grad_scale;
        std::vector<double> dz_hat = decode_backward(cg.gradient, dcache, params);
        std::vector<double> dz = channel::transmit_grad(dz_hat, tx.trace);
        encode_backward(Matrix(code.m(), code.L(), std::move(dz)), ecache, params);
        return cg.value;
    }

    TrainState make_train_state(const Architecture &arch, std::uint64_t init_seed)
    {
        TrainState s{init_params(arch, init_seed), {}, 0};
        auto tensors = s.params.tensors();
        s.adam = make_adam_state(tensors);
        return s;
    }

    std::vector<EpochStats> train(const std::vector<cloud::PointCloud> &clouds, TrainState &state,
                                  const TrainingConfig &cfg, const EpochCallback &on_epoch)
    {
        std::vector<TrainingSample> samples;
        samples.reserve(clouds.size());
        for (const auto &c : clouds)
            samples.push_back(prepare_sample(c, state.params.arch));
        return train(samples, state, cfg, on_epoch);
    }

    std::vector<EpochStats> train(const std::vector<TrainingSample> &samples, TrainState &state,
                                  const TrainingConfig &cfg, const EpochCallback &on_epoch)
    {
        if (samples.empty())
            throw ParameterError("train: empty dataset");
        if (cfg.batch_size < 1)
            throw ParameterError("train: batch size must be >= 1");
        if (cfg.snr_range_db && !(cfg.snr_range_db->first <= cfg.snr_range_db->second))
            throw ParameterError("train: SNR range must satisfy lo <= hi");
        if (!(cfg.lr_decay_factor > 0.0 && cfg.lr_decay_factor <= 1.0))
            throw ParameterError("train: lr decay factor must lie in (0, 1]");
        cfg.channel.validate();

        const std::size_t m_symbols = channel::symbols_for_reals(state.params.arch.latent_size());
        auto tensors = state.params.tensors();
        std::vector<EpochStats> history;
        const auto t0 = std::chrono::steady_clock::now();

        for (std::size_t epoch = state.epochs_done + 1; epoch <= cfg.epochs; ++epoch)
        {
            std::vector<std::size_t> order(samples.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            Rng shuffle_rng(derive_seed(cfg.seed, {kShuffleStream, epoch}));
            std::shuffle(order.begin(), order.end(), shuffle_rng);

            AdamConfig adam = cfg.adam;
            if (cfg.lr_decay_every > 0)
                adam.lr *= std::pow(cfg.lr_decay_factor, static_cast<double>((epoch - 1) / cfg.lr_decay_every));

            double loss_sum = 0.0;
            for (std::size_t start = 0; start < order.size(); start += cfg.batch_size)
            {
                const std::size_t end = std::min(order.size(), start + cfg.batch_size);
                const double scale = 1.0 / static_cast<double>(end - start);
                state.params.zero_grad();
                for (std::size_t pos = start; pos < end; ++pos)
                {
                    const std::size_t idx = order[pos];
                    channel::ChannelConfig ch = cfg.channel;
                    if (cfg.snr_range_db)
                    {
                        Rng snr_rng(derive_seed(cfg.seed, {kSnrStream, epoch, idx}));
                        ch.snr_db = std::uniform_real_distribution<double>(cfg.snr_range_db->first,
                                                                           cfg.snr_range_db->second)(snr_rng);
                    }
                    const auto realization =
                        channel::draw_realization(ch, m_symbols, derive_seed(cfg.seed, {kChannelStream, epoch, idx}));
                    const double loss = sample_loss(samples[idx], state.params, ch, realization, true, scale);
                    if (!std::isfinite(loss))
                        throw NumericalError("training diverged: non-finite loss at epoch " + std::to_string(epoch) +
                                             ", batch " + std::to_string(start / cfg.batch_size + 1) + ", sample '" +
                                             samples[idx].id + "'");
                    loss_sum += loss;
                }
                if (!grads_finite(state.params))
                    throw NumericalError("training diverged: non-finite gradient at epoch " + std::to_string(epoch) +
                                         ", batch " + std::to_string(start / cfg.batch_size + 1));
                adam_step(tensors, state.adam, adam);
            }
            state.epochs_done = epoch;
            EpochStats stats{epoch, loss_sum / static_cast<double>(samples.size()),
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
            history.push_back(stats);
            if (on_epoch)
                on_epoch(stats, state);
        }
        return history;
    }
}
