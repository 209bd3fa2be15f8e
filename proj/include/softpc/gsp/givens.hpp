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

#include <optional>
#include <vector>

namespace softpc::gsp
{
    /// Rotation G(i, j, theta) acting on rows i < j.
    struct GivensAngle
    {
        std::size_t i = 0;
        std::size_t j = 0;
        double theta = 0.0; // in [-pi, pi)
    };

    /// Q = G_1^T G_2^T ... G_K^T diag(signs), with K = n(n-1)/2.
    struct GivensFactorization
    {
        std::size_t n = 0;
        std::vector<GivensAngle> angles;
        std::vector<int> signs;            // +1 / -1
        std::optional<unsigned> bit_depth; // set once angles are quantized
    };

    inline constexpr unsigned kMinAngleBits = 2;
    inline constexpr unsigned kMaxAngleBits = 16;

    /// Zeroes the strict lower triangle column by column with rotations in the
    /// (column, row) plane; what remains is diagonal with entries +-1.
    /// Requires ||Q^T Q - I||_F <= 1e-6.
    GivensFactorization givens_factorize(const Matrix &q);

    /// Uniform midrise quantizer on [-pi, pi) with 2^bits levels.
    double quantize_angle(double theta, unsigned bits);
    GivensFactorization quantize_angles(const GivensFactorization &f, unsigned bits);

    Matrix reconstruct_basis(const GivensFactorization &f);

    /// Flat layout: [n, angle count, (i, j, theta) triples..., signs...].
    std::vector<double> serialize_givens(const GivensFactorization &f);
    GivensFactorization deserialize_givens(const std::vector<double> &flat);
}
