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

#include "softpc/neural/autoencoder.hpp"
#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include <cmath>

namespace softpc::neural
{
    std::size_t Architecture::latent_vertices() const
    {
        std::size_t n = n_points;
        for (double r : ratios)
            n = pooled_size(n, r);
        return n;
    }

    void Architecture::validate() const
    {
        if (n_points < 2)
            throw ParameterError("architecture: n_points must be >= 2");
        if (knn_k < 1 || knn_k >= n_points)
            throw ParameterError("architecture: knn_k must satisfy 1 <= k < n_points");
        for (auto c : channels)
            if (c < 1)
                throw ParameterError("architecture: channel counts must be positive");
        for (double r : ratios)
            if (!(r > 0.0 && r <= 1.0))
                throw ParameterError("architecture: pooling ratios must lie in (0, 1]");
        if (decoder_hidden < 1)
            throw ParameterError("architecture: decoder_hidden must be positive");
        if (!(leaky_slope > 0.0 && leaky_slope < 1.0))
            throw ParameterError("architecture: leaky slope must lie in (0, 1)");
        if (!(avg_power > 0.0))
            throw ParameterError("architecture: average power must be positive");
    }

    std::vector<Tensor2 *> ModelParams::tensors()
    {
        std::vector<Tensor2 *> out;
        for (std::size_t s = 0; s < kStages; ++s)
        {
            out.push_back(&conv_weight[s]);
            out.push_back(&conv_bias[s]);
            out.push_back(&pool_proj[s]);
        }
        for (std::size_t l = 0; l < 3; ++l)
        {
            out.push_back(&dense_weight[l]);
            out.push_back(&dense_bias[l]);
        }
        return out;
    }

    std::vector<const Tensor2 *> ModelParams::tensors() const
    {
        auto mut = const_cast<ModelParams *>(this)->tensors();
        return {mut.begin(), mut.end()};
    }

    void ModelParams::zero_grad()
    {
        for (auto *t : tensors())
            t->zero_grad();
    }

    namespace
    {
        Matrix glorot(std::size_t rows, std::size_t cols, std::size_t fan_in, std::size_t fan_out, Rng &rng)
        {
            const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
            std::uniform_real_distribution<double> u(-limit, limit);
            Matrix m(rows, cols);
            for (double &v : m.values())
                v = u(rng);
            return m;
        }
    }

    ModelParams init_params(const Architecture &arch, std::uint64_t seed)
    {
        arch.validate();
        Rng rng(seed);
        ModelParams p;
        p.arch = arch;
        std::size_t in = 3;
        for (std::size_t s = 0; s < kStages; ++s)
        {
            const std::size_t out = arch.channels[s];
            p.conv_weight[s] = Tensor2(glorot(in, out, in, out, rng));
            p.conv_bias[s] = Tensor2(Matrix(1, out));
            p.pool_proj[s] = Tensor2(glorot(1, out, out, 1, rng));
            in = out;
        }
        const std::size_t widths[4] = {arch.latent_size(), arch.decoder_hidden, arch.decoder_hidden, 3 * arch.n_points};
        for (std::size_t l = 0; l < 3; ++l)
        {
            p.dense_weight[l] = Tensor2(glorot(widths[l + 1], widths[l], widths[l], widths[l + 1], rng));
            p.dense_bias[l] = Tensor2(Matrix(1, widths[l + 1]));
        }
        return p;
    }

    LatentCode encode(const Matrix &points, const cloud::KnnGraph &graph, const ModelParams &params,
                      EncoderCache *cache)
    {
        const Architecture &arch = params.arch;
        if (points.rows() != arch.n_points || points.cols() != 3)
            throw ParameterError("encode: expected " + std::to_string(arch.n_points) + " x 3 points, got " +
                                 std::to_string(points.rows()) + " x " + std::to_string(points.cols()));

        Matrix x = points;
        cloud::KnnGraph g = graph;
        for (std::size_t s = 0; s < kStages; ++s)
        {
            GcnCache gc;
            Matrix pre = gcn_forward(x, g, params.conv_weight[s].value, params.conv_bias[s].value, &gc);
            Matrix act = leaky_relu(pre, arch.leaky_slope);
            TopkResult pool = topk_forward(act, g, params.pool_proj[s].value, arch.ratios[s]);
            Matrix next = pool.out;
            cloud::KnnGraph next_graph = pool.graph;
            if (cache)
            {
                auto &sc = cache->stages[s];
                sc.input = std::move(x);
                sc.graph = std::move(g);
                sc.gcn = std::move(gc);
                sc.pre_activation = std::move(pre);
                sc.activation = std::move(act);
                sc.pool = std::move(pool);
            }
            x = std::move(next);
            g = std::move(next_graph);
        }
        LatentCode code{power_normalize(x, arch.avg_power)};
        if (cache)
            cache->z_raw = std::move(x);
        return code;
    }

    Matrix encode_backward(const Matrix &dz, const EncoderCache &cache, ModelParams &params)
    {
        const Architecture &arch = params.arch;
        Matrix d = power_normalize_backward(dz, cache.z_raw, arch.avg_power);
        for (std::size_t s = kStages; s-- > 0;)
        {
            const auto &sc = cache.stages[s];
            TopkGrads tg = topk_backward(d, sc.activation, params.pool_proj[s].value, sc.pool);
            params.pool_proj[s].grad += tg.dp;
            Matrix dpre = leaky_relu_backward(tg.dx, sc.pre_activation, arch.leaky_slope);
            GcnGrads gg = gcn_backward(dpre, sc.graph, params.conv_weight[s].value, sc.gcn);
            params.conv_weight[s].grad += gg.dtheta;
            params.conv_bias[s].grad += gg.dbias;
            d = std::move(gg.dx);
        }
        return d;
    }

    Matrix decode(std::span<const double> z_hat, const ModelParams &params, DecoderCache *cache)
    {
        const Architecture &arch = params.arch;
        if (z_hat.size() != params.dense_weight[0].value.cols())
            throw ParameterError("decode: latent width " + std::to_string(z_hat.size()) + " != decoder input width " +
                                 std::to_string(params.dense_weight[0].value.cols()));
        auto leaky = [&](std::vector<double> v)
        {
            for (double &x : v)
                if (x < 0.0)
                    x *= arch.leaky_slope;
            return v;
        };
        std::vector<double> pre1 = dense_forward(params.dense_weight[0].value, params.dense_bias[0].value, z_hat);
        std::vector<double> act1 = leaky(pre1);
        std::vector<double> pre2 = dense_forward(params.dense_weight[1].value, params.dense_bias[1].value, act1);
        std::vector<double> act2 = leaky(pre2);
        std::vector<double> out = dense_forward(params.dense_weight[2].value, params.dense_bias[2].value, act2);
        for (double &v : out)
            v = std::tanh(v);

        Matrix pts(out.size() / 3, 3, out);
        if (cache)
            *cache = {std::vector<double>(z_hat.begin(), z_hat.end()), std::move(pre1), std::move(act1),
                      std::move(pre2), std::move(act2), std::move(out)};
        return pts;
    }

    std::vector<double> decode_backward(const Matrix &dpoints, const DecoderCache &cache, ModelParams &params)
    {
        const Architecture &arch = params.arch;
        if (dpoints.size() != cache.out.size())
            throw ParameterError("decode_backward: gradient size mismatch");
        std::vector<double> d(cache.out.size());
        for (std::size_t k = 0; k < d.size(); ++k)
            d[k] = dpoints.values()[k] * (1.0 - cache.out[k] * cache.out[k]);

        auto leaky_back = [&](std::vector<double> g, const std::vector<double> &pre)
        {
            for (std::size_t k = 0; k < g.size(); ++k)
                if (pre[k] < 0.0)
                    g[k] *= arch.leaky_slope;
            return g;
        };
        d = dense_backward(d, params.dense_weight[2].value, cache.act2, params.dense_weight[2].grad,
                           params.dense_bias[2].grad);
        d = leaky_back(std::move(d), cache.pre2);
        d = dense_backward(d, params.dense_weight[1].value, cache.act1, params.dense_weight[1].grad,
                           params.dense_bias[1].grad);
        d = leaky_back(std::move(d), cache.pre1);
        return dense_backward(d, params.dense_weight[0].value, cache.input, params.dense_weight[0].grad,
                              params.dense_bias[0].grad);
    }
}
