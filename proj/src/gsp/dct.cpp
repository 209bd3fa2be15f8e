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

#include "softpc/gsp/dct.hpp"

#include <cmath>
#include <numbers>

namespace softpc::gsp
{
    namespace
    {
        // table[k * n + t] = s_k cos(pi (t + 1/2) k / n)
        std::vector<double> dct_table(std::size_t n)
        {
            std::vector<double> table(n * n);
            const double s0 = std::sqrt(1.0 / static_cast<double>(n));
            const double sk = std::sqrt(2.0 / static_cast<double>(n));
            for (std::size_t k = 0; k < n; ++k)
            {
                const double scale = k == 0 ? s0 : sk;
                for (std::size_t t = 0; t < n; ++t)
                {
                    // reduce the phase index mod 4n before scaling to keep the argument small
                    const std::size_t m = ((2 * t + 1) * k) % (4 * n);
                    table[k * n + t] = scale * std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * static_cast<double>(n)));
                }
            }
            return table;
        }
    }

    std::vector<double> dct_forward(std::span<const double> x)
    {
        const std::size_t n = x.size();
        const auto table = dct_table(n);
        std::vector<double> out(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                s += table[k * n + t] * x[t];
            out[k] = s;
        }
        return out;
    }

    std::vector<double> dct_inverse(std::span<const double> coefficients)
    {
        const std::size_t n = coefficients.size();
        const auto table = dct_table(n);
        std::vector<double> out(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double c = coefficients[k];
            if (c == 0.0)
                continue;
            for (std::size_t t = 0; t < n; ++t)
                out[t] += table[k * n + t] * c;
        }
        return out;
    }
}
