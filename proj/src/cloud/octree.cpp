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

#include "softpc/cloud/octree.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <numeric>

namespace softpc::cloud
{
    namespace
    {
        void split(const PointCloud &cloud, std::vector<std::size_t> indices, const Point3 &lower, double side,
                   unsigned depth, OctreeBlocks &out)
        {
            if (indices.size() <= out.max_block_size || depth >= kMaxOctreeDepth)
            {
                if (indices.size() > out.max_block_size)
                    ++out.oversized_leaves;
                out.blocks.push_back({std::move(indices), lower, side, depth});
                return;
            }

            const double half = side / 2.0;
            std::array<std::vector<std::size_t>, 8> children;
            for (std::size_t idx : indices)
            {
                const Point3 p = cloud.point(idx);
                unsigned code = 0;
                for (unsigned c = 0; c < 3; ++c)
                    if (p[c] >= lower[c] + half)
                        code |= 1u << c;
                children[code].push_back(idx);
            }
            for (unsigned code = 0; code < 8; ++code)
            {
                if (children[code].empty())
                    continue;
                Point3 child_lower = lower;
                for (unsigned c = 0; c < 3; ++c)
                    if (code & (1u << c))
                        child_lower[c] += half;
                split(cloud, std::move(children[code]), child_lower, half, depth + 1, out);
            }
        }
    }

    OctreeBlocks octree_decompose(const PointCloud &cloud, std::size_t max_block_size)
    {
        if (max_block_size < 1)
            throw ParameterError("octree_decompose: max_block_size must be >= 1");

        Point3 lo = cloud.point(0), hi = cloud.point(0);
        for (std::size_t i = 1; i < cloud.size(); ++i)
        {
            const Point3 p = cloud.point(i);
            for (unsigned c = 0; c < 3; ++c)
            {
                lo[c] = std::min(lo[c], p[c]);
                hi[c] = std::max(hi[c], p[c]);
            }
        }
        double side = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
        if (side == 0.0)
            side = 1.0;

        OctreeBlocks out;
        out.max_block_size = max_block_size;
        std::vector<std::size_t> all(cloud.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        split(cloud, std::move(all), lo, side, 0, out);
        return out;
    }
}
