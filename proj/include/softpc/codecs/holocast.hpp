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

#include "softpc/codecs/codec.hpp"

#include <optional>

namespace softpc::codecs
{
    /// Octree blocks, per-block KNN graph Fourier transform, analog coefficients.
    ///
    /// Each block's orthonormal basis (eigenvectors of the symmetric normalized
    /// Laplacian) is charged as metadata: n^2 analog reals per block when sent plainly,
    /// or n(n-1)/2 angles at `givens_bits` bits each when Givens-compressed. Blocks with
    /// fewer than two points send their raw coordinates.
    class HoloCastCodec final : public Codec
    {
    public:
        HoloCastCodec(std::size_t block_size, std::size_t knn_k, std::optional<unsigned> givens_bits = std::nullopt);

        std::string name() const override;
        CodecOutput encode(const cloud::PointCloud &cloud) const override;
        cloud::PointCloud decode(const CodecOutput &sent, std::span<const double> received) const override;

        std::size_t block_size() const noexcept { return block_size_; }
        std::optional<unsigned> givens_bits() const noexcept { return givens_bits_; }

    private:
        std::size_t block_size_;
        std::size_t knn_k_;
        std::optional<unsigned> givens_bits_;
    };
}
