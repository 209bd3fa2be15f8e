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

#include "softpc/neural/layers.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace softpc::neural
{
    struct AdamConfig
    {
        double lr = 0.005;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
    };

    struct AdamState
    {
        std::vector<Matrix> m;
        std::vector<Matrix> v;
        std::uint64_t step = 0; // number of updates applied so far

        bool operator==(const AdamState &) const = default;
    };

    /// Zero moments shaped like `params`.
    AdamState make_adam_state(std::span<Tensor2 *const> params);

    /// One bias-corrected Adam update using each tensor's accumulated grad.
    void adam_step(std::span<Tensor2 *const> params, AdamState &state, const AdamConfig &cfg);
}
