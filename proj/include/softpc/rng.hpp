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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace softpc
{
    using Rng = std::mt19937_64;

    /// SplitMix64 finalizer.
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Derives an independent stream seed from a master seed and a path of indices,
    /// e.g. derive_seed(master, {epoch, sample}).
    constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept
    {
        std::uint64_t s = mix64(master);
        for (auto p : path)
            s = mix64(s ^ mix64(p + 0x632BE59BD9B4E019ULL));
        return s;
    }
}
