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

#include "softpc/channel/overhead.hpp"

namespace softpc::channel
{
    OverheadReport count_overhead(std::uint64_t data_reals, const MetadataSpec &metadata)
    {
        OverheadReport r;
        r.data_symbols = (data_reals + 1) / 2;
        r.metadata_symbols = (metadata.analog_reals + 1) / 2 +
                             (metadata.digital_bits + kBitsPerSymbol - 1) / kBitsPerSymbol;
        r.total_symbols = r.data_symbols + r.metadata_symbols;
        return r;
    }

    std::string overhead_csv_header()
    {
        return "data_symbols,metadata_symbols,total_symbols";
    }

    std::string to_csv(const OverheadReport &r)
    {
        return std::to_string(r.data_symbols) + "," + std::to_string(r.metadata_symbols) + "," +
               std::to_string(r.total_symbols);
    }
}
