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

#include "softpc/cloud/dataset.hpp"
#include "softpc/codecs/trial.hpp"
#include "softpc/harness/config.hpp"
#include "softpc/neural/trainer.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace softpc::harness
{
    /// Train/test clouds, synthetic or read from disk and resampled to the model size.
    cloud::Dataset load_data(const ExperimentConfig &cfg);

    struct TrainOptions
    {
        std::filesystem::path model_path;
        std::filesystem::path log_path;       // per-epoch CSV; empty to skip
        bool resume = false;                  // continue from model_path if it exists
        channel::Equalization equalization = channel::Equalization::Post;
        bool precoding = false;
        bool verbose = false;
    };

    struct TrainOutcome
    {
        neural::TrainState state;
        std::vector<neural::EpochStats> history; // epochs run by this call
    };

    /// Trains (or resumes) a model, checkpointing every `checkpoint_every` epochs.
    TrainOutcome train_model(const ExperimentConfig &cfg, const cloud::Dataset &data, const TrainOptions &opt);

    std::string train_csv_header();

    using ModelPtr = std::shared_ptr<const neural::ModelParams>;

    /// One row per operating point at the overhead-sweep SNR: GNN, HoloCast per block size,
    /// Givens per bit depth, SoftCast per budget fraction.
    std::vector<codecs::TransmissionReport> sweep_overhead(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                           const ModelPtr &model);

    /// codecs.snr_sweep over channel.snr_db (codec-major order).
    std::vector<codecs::TransmissionReport> sweep_snr(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                      const ModelPtr &model);

    struct MatrixEntry
    {
        channel::Equalization equalization;
        bool precoding;
        ModelPtr model;
    };

    /// The four (equalization, precoding) combinations in the order pre/off, pre/on, post/off, post/on.
    std::vector<std::pair<channel::Equalization, bool>> matrix_combinations();

    /// GNN chamfer for each model on its own channel across channel.snr_db.
    std::vector<codecs::TransmissionReport> evaluate_matrix(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                            const std::vector<MatrixEntry> &models);

    void write_reports(const std::filesystem::path &path, const std::vector<codecs::TransmissionReport> &rows);

    // ---- subcommands: read inputs from disk, write CSV/PLY under output_dir ----

    struct CommandResult
    {
        std::vector<std::filesystem::path> files;
    };

    CommandResult cmd_gen_data(const ExperimentConfig &cfg);
    CommandResult cmd_train(const ExperimentConfig &cfg, bool resume, bool verbose);
    CommandResult cmd_sweep_overhead(const ExperimentConfig &cfg);
    CommandResult cmd_sweep_snr(const ExperimentConfig &cfg);
    /// Trains one model per combination (model_<eq>_<on|off>.bin), then evaluates.
    CommandResult cmd_matrix(const ExperimentConfig &cfg, bool resume, bool verbose);
    /// Original and per-codec reconstructions of one cloud as PLY, plus snapshot.csv.
    /// An empty id selects the first test cloud.
    CommandResult cmd_snapshot(const ExperimentConfig &cfg, const std::string &cloud_id, std::optional<double> snr_db);

    std::filesystem::path model_path(const ExperimentConfig &cfg);
    std::filesystem::path matrix_model_path(const ExperimentConfig &cfg, channel::Equalization eq, bool precoding);
}
