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

#include "softpc/neural/trainer.hpp"

#include <filesystem>
#include <iosfwd>

namespace softpc::neural
{
    // Checkpoint layout, all little-endian:
    //
    //   char[4]  magic "SPCM"
    //   u32      format version (1)
    //   u64      n_points, knn_k, channels[3]
    //   f64      ratios[3]
    //   u64      decoder_hidden
    //   f64      leaky_slope, avg_power
    //   u64      epochs_done
    //   u32      tensor count T
    //   T x      { u64 rows, u64 cols, f64 values[rows * cols] }   (row-major)
    //   u8       optimizer flag; when 1:
    //            u64 adam step, then T first-moment and T second-moment blocks
    //            in the same block layout
    //
    // Tensors follow ModelParams::tensors() order.

    inline constexpr std::uint32_t kCheckpointVersion = 1;

    void write_checkpoint(std::ostream &out, const TrainState &state, bool with_optimizer = true);
    TrainState read_checkpoint(std::istream &in);

    void save_model(const TrainState &state, const std::filesystem::path &path, bool with_optimizer = true);
    /// Throws FormatError on a corrupt, truncated or wrong-version file; nothing is
    /// returned unless the whole file parsed.
    TrainState load_model(const std::filesystem::path &path);
}
