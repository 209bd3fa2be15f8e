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

#include "softpc/gsp/gft.hpp"
#include "softpc/error.hpp"
#include "softpc/gsp/jacobi.hpp"

#include <cmath>

namespace softpc::gsp
{
    GftBasis compute_gft_basis(const cloud::KnnGraph &graph, LaplacianKind kind)
    {
        Laplacian lap = build_laplacian(graph, kind);
        EigenDecomposition eig = jacobi_eigen(lap.matrix);
        GftBasis out;
        out.eigenvalues = std::move(eig.eigenvalues);
        out.basis = std::move(eig.eigenvectors);
        out.kind = kind;
        if (kind == LaplacianKind::RandomWalkCompatible)
            out.degrees = std::move(lap.degrees);
        return out;
    }

    Matrix gft_forward(const GftBasis &basis, const Matrix &signal)
    {
        if (signal.rows() != basis.n())
            throw ParameterError("gft_forward: signal has " + std::to_string(signal.rows()) + " rows, basis order is " +
                                 std::to_string(basis.n()));
        return matmul_tn(basis.basis, signal);
    }

    Matrix gft_inverse(const GftBasis &basis, const Matrix &coefficients)
    {
        if (coefficients.rows() != basis.n())
            throw ParameterError("gft_inverse: coefficient rows do not match basis order");
        return matmul(basis.basis, coefficients);
    }

    std::vector<double> serialize_basis(const GftBasis &basis)
    {
        std::vector<double> flat;
        flat.reserve(1 + basis.basis.size());
        flat.push_back(static_cast<double>(basis.n()));
        flat.insert(flat.end(), basis.basis.values().begin(), basis.basis.values().end());
        return flat;
    }

    GftBasis deserialize_basis(const std::vector<double> &flat)
    {
        if (flat.empty())
            throw FormatError("deserialize_basis: empty buffer");
        const double nd = flat[0];
        if (!(nd >= 1.0) || nd != std::floor(nd))
            throw FormatError("deserialize_basis: invalid order");
        const auto n = static_cast<std::size_t>(nd);
        if (flat.size() != 1 + n * n)
            throw FormatError("deserialize_basis: expected " + std::to_string(1 + n * n) + " values");
        GftBasis out;
        out.basis = Matrix(n, n, std::vector<double>(flat.begin() + 1, flat.end()));
        return out;
    }
}
