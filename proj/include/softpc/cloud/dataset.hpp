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

#include "softpc/cloud/cloud_io.hpp"
#include "softpc/cloud/point_cloud.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace softpc::cloud
{
    struct Dataset
    {
        std::vector<PointCloud> train;
        std::vector<PointCloud> test;
    };

    inline constexpr const char *kManifestName = "index.txt";

    /// Writes one file per cloud plus `index.txt` with lines "<filename> <train|test>".
    void write_dataset(const std::filesystem::path &dir, const Dataset &dataset, CloudFormat format = CloudFormat::Ply);

    /// Reads a directory written by write_dataset (or laid out the same way by hand).
    Dataset read_dataset(const std::filesystem::path &dir);

    /// Resamples to exactly n points: random subset when larger, random duplicates
    /// appended when smaller. Deterministic in seed; a cloud of size n is returned unchanged.
    PointCloud resample(const PointCloud &cloud, std::size_t n, std::uint64_t seed);
}
