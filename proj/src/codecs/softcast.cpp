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

#include "softpc/codecs/softcast.hpp"
#include "softpc/error.hpp"
#include "softpc/gsp/dct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace softpc::codecs
{
    namespace
    {
        std::uint32_t quantize10(double v)
        {
            const double q = std::floor((v + 1.0) * 0.5 * 1024.0);
            return static_cast<std::uint32_t>(std::clamp(q, 0.0, 1023.0));
        }

        std::uint32_t spread_bits(std::uint32_t v)
        {
            v &= 0x3FF;
            v = (v | (v << 16)) & 0x030000FF;
            v = (v | (v << 8)) & 0x0300F00F;
            v = (v | (v << 4)) & 0x030C30C3;
            v = (v | (v << 2)) & 0x09249249;
            return v;
        }

        struct SoftCastSideInfo final : SideInfo
        {
            std::vector<std::size_t> order;                       // position -> point index
            std::vector<std::pair<std::size_t, std::size_t>> kept; // (axis, coefficient) per sent real
            std::size_t n_points = 0;
            cloud::AffineParams affine;
            std::string id;
        };
    }

    std::uint32_t morton_code(double x, double y, double z)
    {
        return spread_bits(quantize10(x)) | (spread_bits(quantize10(y)) << 1) | (spread_bits(quantize10(z)) << 2);
    }

    std::vector<std::size_t> morton_order(const cloud::PointCloud &normalized)
    {
        const std::size_t n = normalized.size();
        std::vector<std::uint32_t> codes(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto p = normalized.point(i);
            codes[i] = morton_code(p[0], p[1], p[2]);
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                         { return codes[a] < codes[b]; });
        return order;
    }

    SoftCastCodec::SoftCastCodec(std::size_t symbol_budget) : symbol_budget_(symbol_budget)
    {
        if (symbol_budget_ < 3)
            throw ParameterError("softcast: symbol budget must be >= 3");
    }

    CodecOutput SoftCastCodec::encode(const cloud::PointCloud &cloud) const
    {
        auto [normalized, affine] = cloud::normalize(cloud);
        const std::size_t n = cloud.size();
        auto side = std::make_shared<SoftCastSideInfo>();
        side->order = morton_order(normalized);
        side->n_points = n;
        side->affine = affine;
        side->id = cloud.id();

        std::array<std::vector<double>, 3> coeffs;
        for (std::size_t axis = 0; axis < 3; ++axis)
        {
            std::vector<double> seq(n);
            for (std::size_t pos = 0; pos < n; ++pos)
                seq[pos] = normalized.points()(side->order[pos], axis);
            coeffs[axis] = gsp::dct_forward(seq);
        }

        struct Chunk
        {
            std::size_t axis, begin, end;
            double energy;
        };
        std::vector<Chunk> chunks;
        for (std::size_t axis = 0; axis < 3; ++axis)
            for (std::size_t b = 0; b < n; b += kSoftCastChunk)
            {
                const std::size_t e = std::min(n, b + kSoftCastChunk);
                double energy = 0.0;
                for (std::size_t k = b; k < e; ++k)
                    energy += coeffs[axis][k] * coeffs[axis][k];
                chunks.push_back({axis, b, e, energy});
            }
        std::stable_sort(chunks.begin(), chunks.end(), [](const Chunk &a, const Chunk &b)
                         { return a.energy > b.energy; });

        const std::size_t budget = std::min(2 * symbol_budget_, 3 * n);
        CodecOutput out;
        out.data_reals.reserve(budget);
        for (const auto &c : chunks)
            for (std::size_t k = c.begin; k < c.end && out.data_reals.size() < budget; ++k)
            {
                out.data_reals.push_back(coeffs[c.axis][k]);
                side->kept.emplace_back(c.axis, k);
            }
        out.side_info = std::move(side);
        return out;
    }

    cloud::PointCloud SoftCastCodec::decode(const CodecOutput &sent, std::span<const double> received) const
    {
        const auto *side = dynamic_cast<const SoftCastSideInfo *>(sent.side_info.get());
        if (!side)
            throw ParameterError("softcast: foreign side information");
        if (received.size() != side->kept.size())
            throw ParameterError("softcast: received length does not match the keep map");

        const std::size_t n = side->n_points;
        std::array<std::vector<double>, 3> coeffs;
        for (auto &c : coeffs)
            c.assign(n, 0.0);
        for (std::size_t k = 0; k < received.size(); ++k)
            coeffs[side->kept[k].first][side->kept[k].second] = received[k];

        Matrix pts(n, 3);
        for (std::size_t axis = 0; axis < 3; ++axis)
        {
            const auto seq = gsp::dct_inverse(coeffs[axis]);
            for (std::size_t pos = 0; pos < n; ++pos)
                pts(side->order[pos], axis) = seq[pos];
        }
        return cloud::denormalize(cloud::PointCloud(std::move(pts), side->id), side->affine);
    }
}
