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

#include <vector>

namespace softpc::gsp
{
    struct EigenDecomposition
    {
        std::vector<double> eigenvalues; // ascending
        Matrix eigenvectors;             // column j pairs with eigenvalues[j]
        int sweeps = 0;
    };

    inline constexpr std::size_t kMaxJacobiOrder = 1024;
    inline constexpr int kMaxJacobiSweeps = 100;

    /// Cyclic Jacobi eigensolver for a dense symmetric matrix.
    ///
    /// Rotations sweep the strict upper triangle row by row until the largest
    /// off-diagonal magnitude drops below `tol` (0 selects 1e-14 * ||A||_F).
    /// Eigenpairs are returned in ascending order, each eigenvector flipped so its
    /// first component of magnitude above 1e-9 is positive.
    ///
    /// Throws ParameterError for asymmetry beyond 1e-9 or order above 1024, and
    /// NumericalError if 100 sweeps do not converge.
    EigenDecomposition jacobi_eigen(const Matrix &sym, double tol = 0.0);

    /// Flips each column so that its first component with |v| > 1e-9 is positive.
    void canonicalize_signs(Matrix &columns);
}
