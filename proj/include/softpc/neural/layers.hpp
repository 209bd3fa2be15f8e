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
#include "softpc/matrix.hpp"

#include <span>
#include <vector>

namespace softpc::neural
{
    /// Value with a same-shape gradient accumulator.
    struct Tensor2
    {
        Matrix value;
        Matrix grad;

        Tensor2() = default;
        explicit Tensor2(Matrix v) : value(std::move(v)), grad(value.rows(), value.cols()) {}
        void zero_grad() { grad = Matrix(value.rows(), value.cols()); }
    };

    // ---- leaky ReLU -------------------------------------------------------

    Matrix leaky_relu(const Matrix &x, double slope);
    /// d/dx given the layer input x.
    Matrix leaky_relu_backward(const Matrix &upstream, const Matrix &x, double slope);

    // ---- graph convolution ------------------------------------------------
    //
    // out = A x theta + bias, A = D^-1/2 (W + I) D^-1/2 with D the degree of W + I.

    struct GcnCache
    {
        Matrix propagated; // A x
    };

    Matrix propagate(const cloud::KnnGraph &graph, const Matrix &x);

    Matrix gcn_forward(const Matrix &x, const cloud::KnnGraph &graph, const Matrix &theta, const Matrix &bias,
                       GcnCache *cache = nullptr);

    struct GcnGrads
    {
        Matrix dx;
        Matrix dtheta;
        Matrix dbias;
    };

    GcnGrads gcn_backward(const Matrix &upstream, const cloud::KnnGraph &graph, const Matrix &theta,
                          const GcnCache &cache);

    // ---- Top-K pooling ----------------------------------------------------
    //
    // score y = x p / |p|; the ceil(ratio * n) best-scoring vertices are kept in
    // descending score order (ties to the lower index) and gated by tanh(y).

    std::size_t pooled_size(std::size_t n, double ratio);

    struct TopkResult
    {
        Matrix out;                    // k x c
        cloud::KnnGraph graph;         // induced subgraph, vertex r = kept[r]
        std::vector<std::size_t> kept; // indices into the input rows
        std::vector<double> scores;    // y for every input vertex
    };

    TopkResult topk_forward(const Matrix &x, const cloud::KnnGraph &graph, const Matrix &p, double ratio);

    struct TopkGrads
    {
        Matrix dx;
        Matrix dp;
    };

    /// Gradient with the selection held fixed.
    TopkGrads topk_backward(const Matrix &upstream, const Matrix &x, const Matrix &p, const TopkResult &fwd);

    // ---- power normalization ----------------------------------------------

    /// z = z_raw * sqrt(m L P) / |z_raw|, so |z|^2 = m L P.
    Matrix power_normalize(const Matrix &z_raw, double avg_power);
    Matrix power_normalize_backward(const Matrix &upstream, const Matrix &z_raw, double avg_power);

    // ---- fully connected --------------------------------------------------
    //
    // y = W v + b with W out x in, v and b as column vectors stored 1 x n.

    std::vector<double> dense_forward(const Matrix &w, const Matrix &b, std::span<const double> v);

    /// Accumulates into dw/db and returns the gradient with respect to v.
    std::vector<double> dense_backward(std::span<const double> upstream, const Matrix &w, std::span<const double> v,
                                       Matrix &dw, Matrix &db);
}
