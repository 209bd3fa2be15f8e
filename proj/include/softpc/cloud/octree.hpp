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
#include <vector>

namespace softpc::cloud
{
    struct OctreeBlock
    {
        std::vector<std::size_t> indices;
        Point3 lower{0.0, 0.0, 0.0}; // cell minimum corner
        double side = 0.0;           // cell edge length
        unsigned depth = 0;
    };

    struct OctreeBlocks
    {
        std::vector<OctreeBlock> blocks;
        std::size_t max_block_size = 0;
        /// Leaves that still exceed max_block_size at the depth limit (coincident points).
        std::size_t oversized_leaves = 0;
    };

    inline constexpr unsigned kMaxOctreeDepth = 24;

    /// Recursive 8-way split of the bounding cube at cell midpoints until each leaf
    /// holds at most max_block_size points. Empty leaves are dropped; blocks come out
    /// depth-first with children in octant-code order (bit 0 = x, 1 = y, 2 = z upper half).
    OctreeBlocks octree_decompose(const PointCloud &cloud, std::size_t max_block_size);
}
