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
#include "softpc/matrix.hpp"

#include <string_view>
#include <vector>

namespace softpc::gsp
{
    enum class LaplacianKind
    {
        Combinatorial,       // L = D - W
        SymNormalized,       // I - D^-1/2 W D^-1/2
        RandomWalkCompatible // SymNormalized, plus degrees so random-walk eigenvectors are D^-1/2 U
    };

    std::string_view laplacian_name(LaplacianKind kind) noexcept;

    struct Laplacian
    {
        Matrix matrix;               // symmetric
        std::vector<double> degrees; // vertex degrees of W
        LaplacianKind kind = LaplacianKind::Combinatorial;
    };

    /// Throws ParameterError for an isolated vertex with a normalized kind.
    Laplacian build_laplacian(const cloud::KnnGraph &graph, LaplacianKind kind);

    /// Maps eigenvectors U of L_sym to eigenvectors D^-1/2 U of L_rw = D^-1 L (unnormalized columns).
    Matrix random_walk_eigenvectors(const Matrix &sym_eigenvectors, const std::vector<double> &degrees);
}
