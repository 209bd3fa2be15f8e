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

#include "softpc/neural/layers.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace softpc::neural
{
    Matrix leaky_relu(const Matrix &x, double slope)
    {
        Matrix out = x;
        for (double &v : out.values())
            if (v < 0.0)
                v *= slope;
        return out;
    }

    Matrix leaky_relu_backward(const Matrix &upstream, const Matrix &x, double slope)
    {
        if (!upstream.same_shape(x))
            throw ParameterError("leaky_relu_backward: shape mismatch");
        Matrix out = upstream;
        auto xv = x.values();
        auto ov = out.values();
        for (std::size_t k = 0; k < ov.size(); ++k)
            if (xv[k] < 0.0)
                ov[k] *= slope;
        return out;
    }

    Matrix propagate(const cloud::KnnGraph &graph, const Matrix &x)
    {
        const std::size_t n = graph.n_vertices();
        if (x.rows() != n)
            throw ParameterError("graph convolution: feature rows (" + std::to_string(x.rows()) +
                                 ") differ from vertex count (" + std::to_string(n) + ")");
        std::vector<double> inv_sqrt(n);
        for (std::size_t i = 0; i < n; ++i)
            inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(graph.degree(i) + 1));

        Matrix out(n, x.cols());
        for (std::size_t i = 0; i < n; ++i)
        {
            auto orow = out.row(i);
            const double self = inv_sqrt[i] * inv_sqrt[i];
            auto xi = x.row(i);
            for (std::size_t c = 0; c < x.cols(); ++c)
                orow[c] = self * xi[c];
            for (std::size_t j : graph.neighbors(i))
            {
                const double w = inv_sqrt[i] * inv_sqrt[j];
                auto xj = x.row(j);
                for (std::size_t c = 0; c < x.cols(); ++c)
                    orow[c] += w * xj[c];
            }
        }
        return out;
    }

    Matrix gcn_forward(const Matrix &x, const cloud::KnnGraph &graph, const Matrix &theta, const Matrix &bias,
                       GcnCache *cache)
    {
        if (theta.rows() != x.cols())
            throw ParameterError("gcn_forward: weight rows do not match input channels");
        if (bias.rows() != 1 || bias.cols() != theta.cols())
            throw ParameterError("gcn_forward: bias must be 1 x out_channels");
        Matrix h = propagate(graph, x);
        Matrix out = matmul(h, theta);
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t c = 0; c < out.cols(); ++c)
                out(i, c) += bias(0, c);
        if (cache)
            cache->propagated = std::move(h);
        return out;
    }

    GcnGrads gcn_backward(const Matrix &upstream, const cloud::KnnGraph &graph, const Matrix &theta,
                          const GcnCache &cache)
    {
        GcnGrads g;
        g.dtheta = matmul_tn(cache.propagated, upstream);
        g.dbias = Matrix(1, upstream.cols());
        for (std::size_t i = 0; i < upstream.rows(); ++i)
            for (std::size_t c = 0; c < upstream.cols(); ++c)
                g.dbias(0, c) += upstream(i, c);
        // A is symmetric, so A^T (upstream theta^T) = A (upstream theta^T)
        g.dx = propagate(graph, matmul_nt(upstream, theta));
        return g;
    }

    std::size_t pooled_size(std::size_t n, double ratio)
    {
        if (!(ratio > 0.0 && ratio <= 1.0))
            throw ParameterError("pooling ratio must lie in (0, 1]");
        // guard against products such as 0.9 * 10 landing a hair above an integer
        auto k = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9));
        return std::clamp<std::size_t>(k, 1, n);
    }

    TopkResult topk_forward(const Matrix &x, const cloud::KnnGraph &graph, const Matrix &p, double ratio)
    {
        const std::size_t n = x.rows(), c = x.cols();
        if (p.size() != c)
            throw ParameterError("topk_forward: projection length differs from channel count");
        if (graph.n_vertices() != n)
            throw ParameterError("topk_forward: feature rows differ from vertex count");
        const double pnorm = frobenius_norm(p);
        if (pnorm == 0.0)
            throw ParameterError("topk_forward: projection vector is zero");

        TopkResult r;
        r.scores.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            double s = 0.0;
            for (std::size_t k = 0; k < c; ++k)
                s += x(i, k) * p.values()[k];
            r.scores[i] = s / pnorm;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                         { return r.scores[a] > r.scores[b]; });
        const std::size_t k = pooled_size(n, ratio);
        r.kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

        r.out = Matrix(k, c);
        for (std::size_t row = 0; row < k; ++row)
        {
            const std::size_t i = r.kept[row];
            const double gate = std::tanh(r.scores[i]);
            for (std::size_t ch = 0; ch < c; ++ch)
                r.out(row, ch) = x(i, ch) * gate;
        }
        r.graph = graph.induced_subgraph(r.kept);
        return r;
    }

    TopkGrads topk_backward(const Matrix &upstream, const Matrix &x, const Matrix &p, const TopkResult &fwd)
    {
        const std::size_t c = x.cols();
        if (upstream.rows() != fwd.kept.size() || upstream.cols() != c)
            throw ParameterError("topk_backward: upstream shape mismatch");
        const double pnorm = frobenius_norm(p);
        auto pv = p.values();

        TopkGrads g{Matrix(x.rows(), c), Matrix(p.rows(), p.cols())};
        auto dp = g.dp.values();
        for (std::size_t row = 0; row < fwd.kept.size(); ++row)
        {
            const std::size_t i = fwd.kept[row];
            const double y = fwd.scores[i];
            const double gate = std::tanh(y);
            double dgate = 0.0;
            for (std::size_t ch = 0; ch < c; ++ch)
            {
                g.dx(i, ch) += upstream(row, ch) * gate;
                dgate += upstream(row, ch) * x(i, ch);
            }
            const double dy = dgate * (1.0 - gate * gate);
            // y = x_i . p / |p|
            for (std::size_t ch = 0; ch < c; ++ch)
            {
                g.dx(i, ch) += dy * pv[ch] / pnorm;
                dp[ch] += dy * (x(i, ch) / pnorm - y * pv[ch] / (pnorm * pnorm));
            }
        }
        return g;
    }

    Matrix power_normalize(const Matrix &z_raw, double avg_power)
    {
        const double norm = frobenius_norm(z_raw);
        if (norm == 0.0 || !std::isfinite(norm))
            throw NumericalError("power_normalize: latent has zero or non-finite norm");
        const double target = std::sqrt(static_cast<double>(z_raw.size()) * avg_power);
        return z_raw * (target / norm);
    }

    Matrix power_normalize_backward(const Matrix &upstream, const Matrix &z_raw, double avg_power)
    {
        const double norm = frobenius_norm(z_raw);
        const double target = std::sqrt(static_cast<double>(z_raw.size()) * avg_power);
        double dot = 0.0;
        for (std::size_t k = 0; k < z_raw.size(); ++k)
            dot += upstream.values()[k] * z_raw.values()[k];
        Matrix out(z_raw.rows(), z_raw.cols());
        const double s = target / norm;
        const double proj = dot / (norm * norm);
        for (std::size_t k = 0; k < out.size(); ++k)
            out.values()[k] = s * (upstream.values()[k] - proj * z_raw.values()[k]);
        return out;
    }

    std::vector<double> dense_forward(const Matrix &w, const Matrix &b, std::span<const double> v)
    {
        if (w.cols() != v.size())
            throw ParameterError("dense_forward: input width " + std::to_string(v.size()) + " != weight columns " +
                                 std::to_string(w.cols()));
        if (b.size() != w.rows())
            throw ParameterError("dense_forward: bias length mismatch");
        std::vector<double> out(w.rows());
        for (std::size_t r = 0; r < w.rows(); ++r)
        {
            auto wr = w.row(r);
            double s = b.values()[r];
            for (std::size_t k = 0; k < v.size(); ++k)
                s += wr[k] * v[k];
            out[r] = s;
        }
        return out;
    }

    std::vector<double> dense_backward(std::span<const double> upstream, const Matrix &w, std::span<const double> v,
                                       Matrix &dw, Matrix &db)
    {
        std::vector<double> dv(w.cols(), 0.0);
        for (std::size_t r = 0; r < w.rows(); ++r)
        {
            const double u = upstream[r];
            db.values()[r] += u;
            if (u == 0.0)
                continue;
            auto wr = w.row(r);
            auto dwr = dw.row(r);
            for (std::size_t k = 0; k < v.size(); ++k)
            {
                dwr[k] += u * v[k];
                dv[k] += u * wr[k];
            }
        }
        return dv;
    }
}
