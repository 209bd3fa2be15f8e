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

#include "softpc/codecs/holocast.hpp"
#include "softpc/cloud/knn_graph.hpp"
#include "softpc/cloud/octree.hpp"
#include "softpc/error.hpp"
#include "softpc/gsp/gft.hpp"
#include "softpc/gsp/givens.hpp"

#include <algorithm>

namespace softpc::codecs
{
    namespace
    {
        struct Block
        {
            std::vector<std::size_t> indices;
            Matrix receiver_basis; // empty for raw blocks
        };

        struct HoloCastSideInfo final : SideInfo
        {
            std::vector<Block> blocks;
            std::size_t n_points = 0;
            cloud::AffineParams affine;
            std::string id;
        };
    }

    HoloCastCodec::HoloCastCodec(std::size_t block_size, std::size_t knn_k, std::optional<unsigned> givens_bits)
        : block_size_(block_size), knn_k_(knn_k), givens_bits_(givens_bits)
    {
        if (block_size_ < 2)
            throw ParameterError("holocast: block size must be >= 2");
        if (knn_k_ < 1)
            throw ParameterError("holocast: knn k must be >= 1");
        if (givens_bits_ && (*givens_bits_ < gsp::kMinAngleBits || *givens_bits_ > gsp::kMaxAngleBits))
            throw ParameterError("holocast: Givens bit depth must lie in [2, 16]");
    }

    std::string HoloCastCodec::name() const
    {
        return givens_bits_ ? "holocast_givens_b" + std::to_string(*givens_bits_) : "holocast";
    }

    CodecOutput HoloCastCodec::encode(const cloud::PointCloud &cloud) const
    {
        auto [normalized, affine] = cloud::normalize(cloud);
        const Matrix &pts = normalized.points();
        const cloud::OctreeBlocks tree = cloud::octree_decompose(normalized, block_size_);

        auto side = std::make_shared<HoloCastSideInfo>();
        side->n_points = cloud.size();
        side->affine = affine;
        side->id = cloud.id();
        CodecOutput out;

        for (const auto &leaf : tree.blocks)
        {
            const std::size_t n = leaf.indices.size();
            Matrix x(n, 3);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    x(r, c) = pts(leaf.indices[r], c);

            Block block{leaf.indices, {}};
            if (n < 2)
            {
                out.data_reals.insert(out.data_reals.end(), x.values().begin(), x.values().end());
                side->blocks.push_back(std::move(block));
                continue;
            }

            const auto graph = cloud::build_knn_graph(cloud::PointCloud(x), std::min(knn_k_, n - 1));
            const gsp::GftBasis basis = gsp::compute_gft_basis(graph, gsp::LaplacianKind::RandomWalkCompatible);
            const Matrix coeffs = gsp::gft_forward(basis, x);
            out.data_reals.insert(out.data_reals.end(), coeffs.values().begin(), coeffs.values().end());

            if (givens_bits_)
            {
                const auto factors = gsp::quantize_angles(gsp::givens_factorize(basis.basis), *givens_bits_);
                block.receiver_basis = gsp::reconstruct_basis(factors);
                out.metadata.digital_bits += static_cast<std::uint64_t>(factors.angles.size()) * *givens_bits_;
            }
            else
            {
                block.receiver_basis = basis.basis;
                out.metadata.analog_reals += static_cast<std::uint64_t>(n) * n;
            }
            side->blocks.push_back(std::move(block));
        }
        out.side_info = std::move(side);
        return out;
    }

    cloud::PointCloud HoloCastCodec::decode(const CodecOutput &sent, std::span<const double> received) const
    {
        const auto *side = dynamic_cast<const HoloCastSideInfo *>(sent.side_info.get());
        if (!side)
            throw ParameterError("holocast: foreign side information");
        if (received.size() != 3 * side->n_points)
            throw ParameterError("holocast: received " + std::to_string(received.size()) + " reals, expected " +
                                 std::to_string(3 * side->n_points));

        Matrix out(side->n_points, 3);
        std::size_t offset = 0;
        for (const auto &block : side->blocks)
        {
            const std::size_t n = block.indices.size();
            Matrix chunk(n, 3, std::vector<double>(received.begin() + static_cast<std::ptrdiff_t>(offset),
                                                   received.begin() + static_cast<std::ptrdiff_t>(offset + 3 * n)));
            offset += 3 * n;
            const Matrix x = block.receiver_basis.empty() ? chunk : matmul(block.receiver_basis, chunk);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    out(block.indices[r], c) = x(r, c);
        }
        return cloud::denormalize(cloud::PointCloud(std::move(out), side->id), side->affine);
    }
}
