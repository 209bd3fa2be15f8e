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

#include "softpc/cloud/point_cloud.hpp"
#include "softpc/error.hpp"

#include <cmath>

namespace softpc::cloud
{
    PointCloud::PointCloud(Matrix points, std::string id)
        : points_(std::move(points)), id_(std::move(id))
    {
        if (points_.cols() != 3)
            throw ParameterError("PointCloud: expected 3 columns, got " + std::to_string(points_.cols()));
        if (points_.rows() == 0)
            throw ParameterError("PointCloud: empty cloud");
        if (!all_finite(points_))
            throw ParameterError("PointCloud: non-finite coordinate");
    }

    std::pair<PointCloud, AffineParams> normalize(const PointCloud &cloud, double margin)
    {
        if (!(margin >= 0.0 && margin < 1.0))
            throw ParameterError("normalize: margin must lie in [0, 1)");

        const Matrix &p = cloud.points();
        const std::size_t n = p.rows();
        AffineParams params;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 3; ++c)
                params.centroid[c] += p(i, c);
        for (auto &c : params.centroid)
            c /= static_cast<double>(n);

        Matrix out(n, 3);
        double extent = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 3; ++c)
            {
                out(i, c) = p(i, c) - params.centroid[c];
                extent = std::max(extent, std::abs(out(i, c)));
            }
        if (extent == 0.0)
            throw DegenerateInputError("normalize: all points are identical");

        params.scale = (1.0 - margin) / extent;
        out *= params.scale;
        return {PointCloud(std::move(out), cloud.id()), params};
    }

    PointCloud denormalize(const PointCloud &cloud, const AffineParams &params)
    {
        Matrix out = cloud.points();
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t c = 0; c < 3; ++c)
                out(i, c) = out(i, c) / params.scale + params.centroid[c];
        return PointCloud(std::move(out), cloud.id());
    }

    double squared_distance(const Point3 &a, const Point3 &b) noexcept
    {
        const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
        return dx * dx + dy * dy + dz * dz;
    }
}
