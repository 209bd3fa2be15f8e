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

#include "softpc/gsp/laplacian.hpp"
#include "softpc/error.hpp"

#include <cmath>

namespace softpc::gsp
{
    std::string_view laplacian_name(LaplacianKind kind) noexcept
    {
        switch (kind)
        {
        case LaplacianKind::Combinatorial:
            return "combinatorial";
        case LaplacianKind::SymNormalized:
            return "sym_normalized";
        case LaplacianKind::RandomWalkCompatible:
            return "random_walk_compatible";
        }
        return "?";
    }

    Laplacian build_laplacian(const cloud::KnnGraph &graph, LaplacianKind kind)
    {
        const std::size_t n = graph.n_vertices();
        Laplacian out;
        out.kind = kind;
        out.degrees.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.degrees[i] = static_cast<double>(graph.degree(i));
        out.matrix = Matrix(n, n);

        if (kind == LaplacianKind::Combinatorial)
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                out.matrix(i, i) = out.degrees[i];
                for (std::size_t j : graph.neighbors(i))
                    out.matrix(i, j) = -1.0;
            }
            return out;
        }

        std::vector<double> inv_sqrt(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (out.degrees[i] == 0.0)
                throw ParameterError("build_laplacian: vertex " + std::to_string(i) +
                                     " is isolated (degree zero) and the normalized Laplacian is undefined");
            inv_sqrt[i] = 1.0 / std::sqrt(out.degrees[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
        {
            out.matrix(i, i) = 1.0;
            for (std::size_t j : graph.neighbors(i))
                out.matrix(i, j) = -inv_sqrt[i] * inv_sqrt[j];
        }
        return out;
    }

    Matrix random_walk_eigenvectors(const Matrix &u, const std::vector<double> &degrees)
    {
        if (u.rows() != degrees.size())
            throw ParameterError("random_walk_eigenvectors: dimension mismatch");
        Matrix out = u;
        for (std::size_t i = 0; i < out.rows(); ++i)
        {
            const double s = 1.0 / std::sqrt(degrees[i]);
            for (std::size_t j = 0; j < out.cols(); ++j)
                out(i, j) *= s;
        }
        return out;
    }
}
