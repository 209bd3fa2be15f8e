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

#include "softpc/cloud/knn_graph.hpp"
#include "softpc/gsp/laplacian.hpp"
#include "softpc/matrix.hpp"

#include <vector>

namespace softpc::gsp
{
    /// Orthonormal graph Fourier basis: columns are Laplacian eigenvectors in
    /// ascending eigenvalue order.
    struct GftBasis
    {
        std::vector<double> eigenvalues;
        Matrix basis;
        LaplacianKind kind = LaplacianKind::SymNormalized;
        std::vector<double> degrees; // set for RandomWalkCompatible

        std::size_t n() const noexcept { return basis.rows(); }
    };

    /// Builds the Laplacian of `graph` and eigendecomposes it.
    GftBasis compute_gft_basis(const cloud::KnnGraph &graph, LaplacianKind kind = LaplacianKind::RandomWalkCompatible);

    Matrix gft_forward(const GftBasis &basis, const Matrix &signal);       // basis^T * signal
    Matrix gft_inverse(const GftBasis &basis, const Matrix &coefficients); // basis * coefficients

    /// Flat layout: [n, basis row-major (n*n)]. The eigenvalues are not part of it.
    std::vector<double> serialize_basis(const GftBasis &basis);
    GftBasis deserialize_basis(const std::vector<double> &flat);
}
