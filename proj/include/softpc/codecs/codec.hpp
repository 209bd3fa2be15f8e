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

#include "softpc/channel/channel.hpp"
#include "softpc/channel/overhead.hpp"
#include "softpc/cloud/point_cloud.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace softpc::codecs
{
    /// Codec-specific receiver context, delivered error-free.
    struct SideInfo
    {
        virtual ~SideInfo() = default;
    };

    struct CodecOutput
    {
        std::vector<double> data_reals; // sent as analog I/Q symbols
        channel::MetadataSpec metadata; // charged in the overhead, not sent through the channel
        std::shared_ptr<const SideInfo> side_info;
        /// True when data_reals already meet the average power constraint (the GNN
        /// latent). Otherwise the sender applies one global gain, treated as free side information.
        bool power_normalized = false;

        channel::OverheadReport overhead() const { return channel::count_overhead(data_reals.size(), metadata); }
    };

    class Codec
    {
    public:
        virtual ~Codec() = default;
        virtual std::string name() const = 0;
        virtual CodecOutput encode(const cloud::PointCloud &cloud) const = 0;
        virtual cloud::PointCloud decode(const CodecOutput &sent, std::span<const double> received) const = 0;
    };

    /// Applies the power gain, sends data_reals through one channel realization and
    /// returns the received reals with the gain removed.
    std::vector<double> send_over_channel(const CodecOutput &sent, const channel::ChannelConfig &cfg,
                                          std::uint64_t seed, std::size_t *outages = nullptr);

    /// encode, one channel pass, decode.
    cloud::PointCloud reconstruct(const Codec &codec, const cloud::PointCloud &cloud,
                                  const channel::ChannelConfig &cfg, std::uint64_t seed);
}
