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

#include "softpc/cloud/knn_graph.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <numeric>

namespace softpc::cloud
{
    KnnGraph::KnnGraph(std::size_t k, std::vector<std::vector<std::size_t>> neighbors)
        : k_(k), neighbors_(std::move(neighbors))
    {
        for (auto &list : neighbors_)
            std::sort(list.begin(), list.end());
    }

    bool KnnGraph::adjacent(std::size_t i, std::size_t j) const
    {
        const auto &list = neighbors_.at(i);
        return std::binary_search(list.begin(), list.end(), j);
    }

    std::vector<std::pair<std::size_t, std::size_t>> KnnGraph::edges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < neighbors_.size(); ++i)
            for (std::size_t j : neighbors_[i])
                if (i < j)
                    out.emplace_back(i, j);
        return out;
    }

    Matrix KnnGraph::adjacency() const
    {
        Matrix w(n_vertices(), n_vertices());
        for (std::size_t i = 0; i < neighbors_.size(); ++i)
            for (std::size_t j : neighbors_[i])
                w(i, j) = 1.0;
        return w;
    }

    KnnGraph KnnGraph::induced_subgraph(std::span<const std::size_t> kept) const
    {
        std::vector<std::size_t> new_index(n_vertices(), n_vertices());
        for (std::size_t r = 0; r < kept.size(); ++r)
        {
            if (kept[r] >= n_vertices())
                throw ParameterError("induced_subgraph: vertex index out of range");
            new_index[kept[r]] = r;
        }
        std::vector<std::vector<std::size_t>> lists(kept.size());
        for (std::size_t r = 0; r < kept.size(); ++r)
            for (std::size_t j : neighbors_[kept[r]])
                if (new_index[j] != n_vertices())
                    lists[r].push_back(new_index[j]);
        return KnnGraph(k_, std::move(lists));
    }

    KnnGraph build_knn_graph(const PointCloud &cloud, std::size_t k)
    {
        const std::size_t n = cloud.size();
        if (k < 1 || k >= n)
            throw ParameterError("build_knn_graph: need 1 <= k < N (k=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");

        std::vector<std::vector<std::size_t>> lists(n);
        std::vector<std::pair<double, std::size_t>> cand(n - 1);
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point3 pi = cloud.point(i);
            std::size_t c = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    cand[c++] = {squared_distance(pi, cloud.point(j)), j};
            // pair ordering gives distance first, then lower index
            std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
            for (std::size_t t = 0; t < k; ++t)
                lists[i].push_back(cand[t].second);
        }

        // OR-symmetrize
        std::vector<std::vector<std::size_t>> sym(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : lists[i])
            {
                sym[i].push_back(j);
                sym[j].push_back(i);
            }
        for (auto &list : sym)
        {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        return KnnGraph(k, std::move(sym));
    }
}
