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

#include "softpc/codecs/codec.hpp"

#include <cmath>

namespace softpc::codecs
{
    std::vector<double> send_over_channel(const CodecOutput &sent, const channel::ChannelConfig &cfg,
                                          std::uint64_t seed, std::size_t *outages)
    {
        const auto &x = sent.data_reals;
        if (x.empty())
            return {};
        double gain = 1.0;
        if (!sent.power_normalized)
        {
            double energy = 0.0;
            for (double v : x)
                energy += v * v;
            if (energy > 0.0)
                gain = std::sqrt(cfg.avg_power * static_cast<double>(x.size()) / energy);
        }
        std::vector<double> tx(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            tx[k] = gain * x[k];

        const auto realization = channel::draw_realization(cfg, channel::symbols_for_reals(tx.size()), seed);
        channel::TransmitResult rx = channel::transmit(tx, cfg, realization);
        if (outages)
            *outages += rx.trace.outages;
        if (gain != 1.0)
            for (double &v : rx.z_hat)
                v /= gain;
        return std::move(rx.z_hat);
    }

    cloud::PointCloud reconstruct(const Codec &codec, const cloud::PointCloud &cloud,
                                  const channel::ChannelConfig &cfg, std::uint64_t seed)
    {
        const CodecOutput sent = codec.encode(cloud);
        return codec.decode(sent, send_over_channel(sent, cfg, seed));
    }
}
