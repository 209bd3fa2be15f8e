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
#include <string>

namespace softpc::channel
{
    /// Side information a codec ships in addition to its data symbols.
    struct MetadataSpec
    {
        std::uint64_t analog_reals = 0; // e.g. uncompressed eigenvector entries
        std::uint64_t digital_bits = 0; // e.g. quantized Givens angles
    };

    struct OverheadReport
    {
        std::uint64_t data_symbols = 0;
        std::uint64_t metadata_symbols = 0;
        std::uint64_t total_symbols = 0;

        bool operator==(const OverheadReport &) const = default;
    };

    /// Digital side information is charged at two bits per symbol.
    inline constexpr std::uint64_t kBitsPerSymbol = 2;

    OverheadReport count_overhead(std::uint64_t data_reals, const MetadataSpec &metadata);

    std::string overhead_csv_header();
    std::string to_csv(const OverheadReport &r);
}
