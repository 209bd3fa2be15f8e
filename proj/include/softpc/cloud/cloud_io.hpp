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

#include "softpc/cloud/point_cloud.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace softpc::cloud
{
    enum class CloudFormat
    {
        Ply,
        Off,
        Xyz
    };

    /// Maps ".ply", ".off", ".xyz" (case-insensitive) to a format.
    std::optional<CloudFormat> format_from_extension(const std::filesystem::path &path);
    std::string_view format_name(CloudFormat format) noexcept;

    /// Reads vertex positions only; faces, colours and other properties are skipped.
    /// Malformed input raises ParseError carrying the offending line number.
    PointCloud read_cloud(std::istream &in, CloudFormat format);
    void write_cloud(std::ostream &out, const PointCloud &cloud, CloudFormat format);

    PointCloud load_cloud(const std::filesystem::path &path, CloudFormat format);
    PointCloud load_cloud(const std::filesystem::path &path);
    void save_cloud(const PointCloud &cloud, const std::filesystem::path &path, CloudFormat format);
    void save_cloud(const PointCloud &cloud, const std::filesystem::path &path);
}
