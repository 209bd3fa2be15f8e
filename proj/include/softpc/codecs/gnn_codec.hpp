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
#include "softpc/neural/autoencoder.hpp"

#include <memory>

namespace softpc::codecs
{
    /// Graph autoencoder codec: the power-normalized latent is the whole transmission,
    /// no basis metadata.
    class GnnCodec final : public Codec
    {
    public:
        explicit GnnCodec(std::shared_ptr<const neural::ModelParams> model, std::string label = "gnn");

        std::string name() const override { return label_; }
        CodecOutput encode(const cloud::PointCloud &cloud) const override;
        cloud::PointCloud decode(const CodecOutput &sent, std::span<const double> received) const override;

        const neural::ModelParams &model() const noexcept { return *model_; }

    private:
        std::shared_ptr<const neural::ModelParams> model_;
        std::string label_;
    };
}
