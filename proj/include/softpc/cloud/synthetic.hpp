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
#include "softpc/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace softpc::cloud
{
    /// Shape families: "sphere", "airplane", "box_edges".
    struct SyntheticSpec
    {
        std::string family = "airplane";
        std::size_t count = 1;
        std::size_t points_per_cloud = 512;
        std::uint64_t seed = 0;
        bool pose_jitter = true;
    };

    const std::vector<std::string> &synthetic_families();

    /// Raw samples of one shape instance before any pose/scale jitter.
    Matrix sample_shape(const std::string &family, std::size_t n_points, Rng &rng);

    /// Small random yaw/pitch/roll, isotropic scale and translation.
    Matrix apply_pose_jitter(const Matrix &points, Rng &rng);

    /// Deterministic in `spec.seed`; cloud i is labelled "<family>_<i>".
    std::vector<PointCloud> generate_synthetic_dataset(const SyntheticSpec &spec);
}
