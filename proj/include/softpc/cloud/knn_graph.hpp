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

#include "softpc/cloud/point_cloud.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace softpc::cloud
{
    /// Undirected graph with a symmetric binary adjacency, stored as sorted
    /// neighbor lists. Diagonal is always zero.
    class KnnGraph
    {
    public:
        KnnGraph() = default;
        KnnGraph(std::size_t k, std::vector<std::vector<std::size_t>> neighbors);

        std::size_t n_vertices() const noexcept { return neighbors_.size(); }
        std::size_t k() const noexcept { return k_; }
        const std::vector<std::size_t> &neighbors(std::size_t i) const noexcept { return neighbors_[i]; }
        std::size_t degree(std::size_t i) const noexcept { return neighbors_[i].size(); }
        bool adjacent(std::size_t i, std::size_t j) const;

        /// Edge list with i < j, in lexicographic order.
        std::vector<std::pair<std::size_t, std::size_t>> edges() const;

        /// Dense 0/1 adjacency matrix.
        Matrix adjacency() const;

        /// Subgraph induced by `kept`; vertex r of the result is `kept[r]` of this graph.
        KnnGraph induced_subgraph(std::span<const std::size_t> kept) const;

    private:
        std::size_t k_ = 0;
        std::vector<std::vector<std::size_t>> neighbors_;
    };

    /// Connects every point to its k nearest points (Euclidean, ties to the lower
    /// index) and symmetrizes by logical OR. Requires 1 <= k < N.
    KnnGraph build_knn_graph(const PointCloud &cloud, std::size_t k);
}
