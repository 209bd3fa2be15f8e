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

#include "softpc/codecs/gnn_codec.hpp"
#include "softpc/cloud/knn_graph.hpp"
#include "softpc/error.hpp"

namespace softpc::codecs
{
    namespace
    {
        struct GnnSideInfo final : SideInfo
        {
            cloud::AffineParams affine;
            std::string id;
        };
    }

    GnnCodec::GnnCodec(std::shared_ptr<const neural::ModelParams> model, std::string label)
        : model_(std::move(model)), label_(std::move(label))
    {
        if (!model_)
            throw ParameterError("GnnCodec: null model");
    }

    CodecOutput GnnCodec::encode(const cloud::PointCloud &cloud) const
    {
        const auto &arch = model_->arch;
        if (cloud.size() != arch.n_points)
            throw ParameterError("gnn codec: cloud '" + cloud.id() + "' has " + std::to_string(cloud.size()) +
                                 " points, model expects " + std::to_string(arch.n_points));
        auto [normalized, affine] = cloud::normalize(cloud);
        const auto graph = cloud::build_knn_graph(normalized, arch.knn_k);
        neural::LatentCode code = neural::encode(normalized.points(), graph, *model_);

        auto side = std::make_shared<GnnSideInfo>();
        side->affine = affine;
        side->id = cloud.id();
        CodecOutput out;
        out.data_reals = code.z.storage();
        out.side_info = std::move(side);
        out.power_normalized = true;
        return out;
    }

    cloud::PointCloud GnnCodec::decode(const CodecOutput &sent, std::span<const double> received) const
    {
        const auto *side = dynamic_cast<const GnnSideInfo *>(sent.side_info.get());
        if (!side)
            throw ParameterError("gnn codec: foreign side information");
        Matrix pts = neural::decode(received, *model_);
        return cloud::denormalize(cloud::PointCloud(std::move(pts), side->id), side->affine);
    }
}
