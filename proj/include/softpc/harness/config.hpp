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
#include "softpc/neural/autoencoder.hpp"
#include "softpc/neural/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace softpc::harness
{
    struct DatasetSection
    {
        std::optional<std::filesystem::path> path; // directory with index.txt; synthetic when unset
        std::string family = "airplane";
        std::size_t n_train = 200;
        std::size_t n_test = 34;
        std::size_t points = 512;
        bool pose_jitter = true;
    };

    struct TrainingSection
    {
        std::size_t epochs = 500;
        std::size_t batch_size = 10;
        neural::AdamConfig adam;
        std::size_t lr_decay_every = 150; // step decay of the initial rate; 0 disables
        double lr_decay_factor = 0.3;
        double snr_db = 20.0;
        std::optional<std::pair<double, double>> snr_range_db;
        std::size_t checkpoint_every = 25;
        std::string model_file = "model.bin";
    };

    struct ChannelSection
    {
        channel::FadingMode mode = channel::FadingMode::Rayleigh;
        channel::Equalization equalization = channel::Equalization::Post;
        bool precoding = true;
        double avg_power = 1.0;
        std::vector<double> snr_db{-5, 0, 5, 10, 15, 20, 25};
    };

    struct EvaluationSection
    {
        std::size_t n_realizations = 20;
        double overhead_snr_db = 20.0;
        double snapshot_snr_db = 20.0;
        /// SNR standing in for "high SNR" when checking SoftCast's quality floor.
        double floor_snr_db = 40.0;
    };

    struct CodecSection
    {
        std::vector<std::string> snr_sweep{"gnn", "holocast", "holocast_givens", "softcast"};
        std::vector<std::size_t> holocast_block_sizes{100, 200, 300, 500};
        std::size_t holocast_block_size = 300; // SNR sweep and snapshots
        std::size_t givens_block_size = 300;
        std::vector<unsigned> givens_bits{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        unsigned givens_bits_snr = 8;
        std::vector<double> softcast_fractions{0.05, 0.1, 0.25, 0.5, 0.75, 1.0};
        double softcast_fraction = 0.25; // of the 3N coefficients
    };

    struct ExperimentConfig
    {
        std::uint64_t seed = 1;
        std::filesystem::path output_dir = "out";
        DatasetSection dataset;
        neural::Architecture model;
        TrainingSection training;
        ChannelSection channel;
        EvaluationSection evaluation;
        CodecSection codecs;

        void validate() const;

        /// Channel used for training and evaluation at the given SNR.
        channel::ChannelConfig channel_at(double snr_db) const;
        neural::TrainingConfig training_config(channel::Equalization eq, bool precoding) const;

        /// SoftCast symbol budget for a fraction of the 3N DCT coefficients.
        std::size_t softcast_budget(double fraction) const;

        std::uint64_t dataset_seed() const;
        std::uint64_t init_seed() const;
        std::uint64_t training_seed() const;
        std::uint64_t evaluation_seed() const;
    };

    /// Parses a JSON config. Absent keys keep their defaults; unknown keys are rejected.
    ExperimentConfig parse_config(const std::string &text, const std::string &source = "config");
    ExperimentConfig load_config(const std::filesystem::path &path);
    /// Every field, including defaults, as indented JSON.
    std::string dump_config(const ExperimentConfig &cfg);
}
