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

#include "softpc/matrix.hpp"

#include <array>
#include <cstddef>
#include <string>

namespace softpc::cloud
{
    using Point3 = std::array<double, 3>;

    /// N x 3 coordinate matrix with an opaque label. Construction rejects empty or
    /// non-finite input.
    class PointCloud
    {
    public:
        PointCloud() = default;
        explicit PointCloud(Matrix points, std::string id = {});

        std::size_t size() const noexcept { return points_.rows(); }
        const Matrix &points() const noexcept { return points_; }
        const std::string &id() const noexcept { return id_; }
        void set_id(std::string id) { id_ = std::move(id); }

        Point3 point(std::size_t i) const noexcept { return {points_(i, 0), points_(i, 1), points_(i, 2)}; }

    private:
        Matrix points_;
        std::string id_;
    };

    /// Inverse of `normalize`: original = normalized / scale + centroid.
    struct AffineParams
    {
        Point3 centroid{0.0, 0.0, 0.0};
        double scale = 1.0;
    };

    inline constexpr double kDefaultMargin = 0.05;

    /// Centers the cloud at its centroid and scales it so the largest absolute
    /// coordinate equals 1 - margin. Throws DegenerateInputError when all points coincide.
    std::pair<PointCloud, AffineParams> normalize(const PointCloud &cloud, double margin = kDefaultMargin);
    PointCloud denormalize(const PointCloud &cloud, const AffineParams &params);

    double squared_distance(const Point3 &a, const Point3 &b) noexcept;
}
