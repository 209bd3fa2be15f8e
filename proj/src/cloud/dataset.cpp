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

#include "softpc/cloud/dataset.hpp"
#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace softpc::cloud
{
    void write_dataset(const std::filesystem::path &dir, const Dataset &dataset, CloudFormat format)
    {
        std::filesystem::create_directories(dir);
        std::ofstream index(dir / kManifestName);
        if (!index)
            throw ParameterError("write_dataset: cannot write manifest in " + dir.string());

        auto emit = [&](const std::vector<PointCloud> &clouds, const char *split)
        {
            for (std::size_t i = 0; i < clouds.size(); ++i)
            {
                std::string stem = clouds[i].id().empty() ? std::string(split) + "_" + std::to_string(i) : clouds[i].id();
                std::string file = stem + "." + std::string(format_name(format));
                save_cloud(clouds[i], dir / file, format);
                index << file << ' ' << split << '\n';
            }
        };
        emit(dataset.train, "train");
        emit(dataset.test, "test");
    }

    Dataset read_dataset(const std::filesystem::path &dir)
    {
        std::ifstream index(dir / kManifestName);
        if (!index)
            throw ParseError("cannot open manifest", 0, (dir / kManifestName).string());

        Dataset out;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(index, line))
        {
            ++line_no;
            std::istringstream ss(line);
            std::string file, split, extra;
            if (!(ss >> file))
                continue;
            if (file.front() == '#')
                continue;
            if (!(ss >> split) || (ss >> extra))
                throw ParseError("expected '<filename> <train|test>'", line_no, (dir / kManifestName).string());
            if (split != "train" && split != "test")
                throw ParseError("unknown split '" + split + "'", line_no, (dir / kManifestName).string());
            PointCloud c = load_cloud(dir / file);
            (split == "train" ? out.train : out.test).push_back(std::move(c));
        }
        return out;
    }

    PointCloud resample(const PointCloud &cloud, std::size_t n, std::uint64_t seed)
    {
        if (n == 0)
            throw ParameterError("resample: target size must be >= 1");
        if (cloud.size() == n)
            return cloud;

        Rng rng(seed);
        std::vector<std::size_t> idx(cloud.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<std::size_t> chosen;
        if (cloud.size() > n)
        {
            std::shuffle(idx.begin(), idx.end(), rng);
            chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
            std::sort(chosen.begin(), chosen.end());
        }
        else
        {
            chosen = idx;
            std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
            while (chosen.size() < n)
                chosen.push_back(pick(rng));
        }
        Matrix pts(n, 3);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                pts(r, c) = cloud.points()(chosen[r], c);
        return PointCloud(std::move(pts), cloud.id());
    }
}
