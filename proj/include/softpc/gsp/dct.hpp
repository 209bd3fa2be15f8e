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

#include <span>
#include <vector>

namespace softpc::gsp
{
    /// Orthonormal DCT-II, direct O(n^2) evaluation.
    std::vector<double> dct_forward(std::span<const double> x);
    /// Orthonormal DCT-III, the inverse of dct_forward.
    std::vector<double> dct_inverse(std::span<const double> coefficients);
}
