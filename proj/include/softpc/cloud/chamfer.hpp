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

namespace softpc::cloud
{
    /// Both directed mean nearest-neighbour distances between S and S_hat.
    struct ChamferTerms
    {
        double forward = 0.0;  // mean over p in S of min over S_hat
        double backward = 0.0; // mean over q in S_hat of min over S
        double value() const noexcept { return forward > backward ? forward : backward; }
    };

    ChamferTerms chamfer_terms(const PointCloud &s, const PointCloud &s_hat);

    /// Augmented Chamfer distance: max of the two directed mean-min L2 terms.
    double chamfer_distance(const PointCloud &s, const PointCloud &s_hat);

    struct ChamferWithGradient
    {
        double value = 0.0;
        Matrix gradient; // |S_hat| x 3, d value / d S_hat
    };

    /// Value and gradient with respect to the reconstructed points. Nearest-neighbour
    /// ties go to the lower index; at an exact tie between the two directed terms both
    /// branch gradients are averaged; coincident pairs contribute a zero direction.
    ChamferWithGradient chamfer_with_gradient(const PointCloud &s, const PointCloud &s_hat);

    inline Matrix chamfer_gradient(const PointCloud &s, const PointCloud &s_hat)
    {
        return chamfer_with_gradient(s, s_hat).gradient;
    }
}
