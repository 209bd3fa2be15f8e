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

#include <cstdint>

namespace softpc::codecs
{
    inline constexpr std::size_t kSoftCastChunk = 64;

    /// Z-order code of a point in [-1, 1]^3, 10 bits per axis.
    std::uint32_t morton_code(double x, double y, double z);

    /// Point order by Morton code, ties to the lower index.
    std::vector<std::size_t> morton_order(const cloud::PointCloud &normalized);

    /// Per-axis DCT over Morton-ordered points, 64-coefficient chunks ranked by
    /// energy, and the leading 2 * symbol_budget coefficients of the ranked chunk
    /// sequence sent as analog values. Dropped coefficients decode as zero. The
    /// ordering and the keep map travel as uncharged side information.
    class SoftCastCodec final : public Codec
    {
    public:
        explicit SoftCastCodec(std::size_t symbol_budget);

        std::string name() const override { return "softcast"; }
        CodecOutput encode(const cloud::PointCloud &cloud) const override;
        cloud::PointCloud decode(const CodecOutput &sent, std::span<const double> received) const override;

        std::size_t symbol_budget() const noexcept { return symbol_budget_; }

    private:
        std::size_t symbol_budget_;
    };
}
