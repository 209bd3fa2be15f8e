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

#include "softpc/harness/commands.hpp"

#include "softpc/cloud/chamfer.hpp"
#include "softpc/cloud/cloud_io.hpp"
#include "softpc/cloud/synthetic.hpp"
#include "softpc/codecs/gnn_codec.hpp"
#include "softpc/codecs/holocast.hpp"
#include "softpc/codecs/softcast.hpp"
#include "softpc/error.hpp"
#include "softpc/neural/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace softpc::harness
{
    namespace
    {
        std::string fraction_label(double f)
        {
            std::ostringstream ss;
            ss << f;
            return ss.str();
        }

        std::unique_ptr<codecs::Codec> make_codec(const ExperimentConfig &cfg, const std::string &name,
                                                  const ModelPtr &model)
        {
            if (name == "gnn")
            {
                if (!model)
                    throw ParameterError("codec 'gnn' needs a trained model");
                return std::make_unique<codecs::GnnCodec>(model);
            }
            if (name == "holocast")
                return std::make_unique<codecs::HoloCastCodec>(cfg.codecs.holocast_block_size, cfg.model.knn_k);
            if (name == "holocast_givens")
                return std::make_unique<codecs::HoloCastCodec>(cfg.codecs.givens_block_size, cfg.model.knn_k,
                                                               cfg.codecs.givens_bits_snr);
            if (name == "softcast")
                return std::make_unique<codecs::SoftCastCodec>(cfg.softcast_budget(cfg.codecs.softcast_fraction));
            throw ParameterError("unknown codec '" + name + "'");
        }

        ModelPtr load_trained(const std::filesystem::path &path)
        {
            if (!std::filesystem::exists(path))
                throw ParameterError("missing model checkpoint '" + path.string() + "' (run train first)");
            return std::make_shared<neural::ModelParams>(neural::load_model(path).params);
        }

        void ensure_dir(const std::filesystem::path &dir)
        {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec)
                throw ParameterError("cannot create directory '" + dir.string() + "': " + ec.message());
        }

        std::string csv_row(const neural::EpochStats &e)
        {
            std::ostringstream ss;
            ss << e.epoch << ',' << std::setprecision(17) << e.mean_loss << ',' << std::setprecision(6)
               << e.wall_time_s;
            return ss.str();
        }

        /// Existing log rows for epochs 1..keep, or just the header.
        std::vector<std::string> kept_log_rows(const std::filesystem::path &path, std::size_t keep)
        {
            std::vector<std::string> rows{train_csv_header()};
            std::ifstream in(path);
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line))
            {
                const auto comma = line.find(',');
                if (comma == std::string::npos)
                    continue;
                if (std::stoull(line.substr(0, comma)) <= keep)
                    rows.push_back(line);
            }
            return rows;
        }

        const char *onoff(bool b) { return b ? "on" : "off"; }
    }

    cloud::Dataset load_data(const ExperimentConfig &cfg)
    {
        cfg.validate();
        cloud::Dataset ds;
        if (cfg.dataset.path)
        {
            cloud::Dataset raw = cloud::read_dataset(*cfg.dataset.path);
            for (std::size_t i = 0; i < raw.train.size(); ++i)
                ds.train.push_back(cloud::resample(raw.train[i], cfg.dataset.points, derive_seed(cfg.dataset_seed(), {0, i})));
            for (std::size_t i = 0; i < raw.test.size(); ++i)
                ds.test.push_back(cloud::resample(raw.test[i], cfg.dataset.points, derive_seed(cfg.dataset_seed(), {1, i})));
            if (ds.train.empty() || ds.test.empty())
                throw ParameterError("dataset '" + cfg.dataset.path->string() + "' needs both train and test clouds");
            return ds;
        }
        cloud::SyntheticSpec spec;
        spec.family = cfg.dataset.family;
        spec.count = cfg.dataset.n_train + cfg.dataset.n_test;
        spec.points_per_cloud = cfg.dataset.points;
        spec.seed = cfg.dataset_seed();
        spec.pose_jitter = cfg.dataset.pose_jitter;
        auto all = cloud::generate_synthetic_dataset(spec);
        ds.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.dataset.n_train));
        ds.test.assign(all.begin() + static_cast<std::ptrdiff_t>(cfg.dataset.n_train), all.end());
        return ds;
    }

    std::string train_csv_header() { return "epoch,mean_loss,wall_time"; }

    TrainOutcome train_model(const ExperimentConfig &cfg, const cloud::Dataset &data, const TrainOptions &opt)
    {
        const neural::TrainingConfig tcfg = cfg.training_config(opt.equalization, opt.precoding);
        TrainOutcome out;
        if (opt.resume && std::filesystem::exists(opt.model_path))
        {
            out.state = neural::load_model(opt.model_path);
            if (!(out.state.params.arch == cfg.model))
                throw ParameterError("checkpoint '" + opt.model_path.string() + "' has a different architecture");
            if (out.state.adam.m.empty())
                throw ParameterError("checkpoint '" + opt.model_path.string() + "' has no optimizer state to resume");
        }
        else
            out.state = neural::make_train_state(cfg.model, cfg.init_seed());

        if (!opt.model_path.empty() && opt.model_path.has_parent_path())
            ensure_dir(opt.model_path.parent_path());
        std::vector<std::string> log_rows;
        if (!opt.log_path.empty())
        {
            log_rows = opt.resume ? kept_log_rows(opt.log_path, out.state.epochs_done)
                                  : std::vector<std::string>{train_csv_header()};
            if (opt.log_path.has_parent_path())
                ensure_dir(opt.log_path.parent_path());
        }

        auto flush = [&](const neural::TrainState &state)
        {
            if (!opt.model_path.empty())
                neural::save_model(state, opt.model_path);
            if (!opt.log_path.empty())
            {
                std::ofstream log(opt.log_path, std::ios::trunc);
                for (const auto &row : log_rows)
                    log << row << '\n';
                if (!log)
                    throw ParameterError("cannot write '" + opt.log_path.string() + "'");
            }
        };

        const std::size_t every = std::max<std::size_t>(1, cfg.training.checkpoint_every);
        auto on_epoch = [&](const neural::EpochStats &e, const neural::TrainState &state)
        {
            log_rows.push_back(csv_row(e));
            if (opt.verbose && (e.epoch == 1 || e.epoch % every == 0 || e.epoch == tcfg.epochs))
                std::fprintf(stderr, "epoch %zu/%zu loss %.6f (%.1fs)\n", e.epoch, tcfg.epochs, e.mean_loss,
                             e.wall_time_s);
            if (e.epoch % every == 0 && e.epoch != tcfg.epochs)
                flush(state);
        };
        out.history = neural::train(data.train, out.state, tcfg, on_epoch);
        flush(out.state);
        return out;
    }

    std::vector<codecs::TransmissionReport> sweep_overhead(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                           const ModelPtr &model)
    {
        const auto ch = cfg.channel_at(cfg.evaluation.overhead_snr_db);
        const auto n = cfg.evaluation.n_realizations;
        const auto seed = cfg.evaluation_seed();
        std::vector<codecs::TransmissionReport> rows;
        auto run = [&](const codecs::Codec &codec, const std::string &label)
        {
            auto r = codecs::evaluate_codec(codec, data.test, ch, n, seed);
            r.codec = label;
            rows.push_back(std::move(r));
        };
        if (model)
            run(codecs::GnnCodec(model), "gnn");
        for (std::size_t b : cfg.codecs.holocast_block_sizes)
            run(codecs::HoloCastCodec(b, cfg.model.knn_k), "holocast_n" + std::to_string(b));
        for (unsigned b : cfg.codecs.givens_bits)
            run(codecs::HoloCastCodec(cfg.codecs.givens_block_size, cfg.model.knn_k, b),
                "holocast_givens_b" + std::to_string(b));
        for (double f : cfg.codecs.softcast_fractions)
            run(codecs::SoftCastCodec(cfg.softcast_budget(f)), "softcast_f" + fraction_label(f));
        return rows;
    }

    std::vector<codecs::TransmissionReport> sweep_snr(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                      const ModelPtr &model)
    {
        std::vector<channel::ChannelConfig> grid;
        for (double snr : cfg.channel.snr_db)
            grid.push_back(cfg.channel_at(snr));
        std::vector<codecs::TransmissionReport> rows;
        for (const auto &name : cfg.codecs.snr_sweep)
        {
            auto codec = make_codec(cfg, name, model);
            auto reports = codecs::evaluate_codec_grid(*codec, data.test, grid, cfg.evaluation.n_realizations,
                                                       cfg.evaluation_seed());
            rows.insert(rows.end(), reports.begin(), reports.end());
        }
        return rows;
    }

    std::vector<std::pair<channel::Equalization, bool>> matrix_combinations()
    {
        using channel::Equalization;
        return {{Equalization::Pre, false}, {Equalization::Pre, true}, {Equalization::Post, false},
                {Equalization::Post, true}};
    }

    std::vector<codecs::TransmissionReport> evaluate_matrix(const ExperimentConfig &cfg, const cloud::Dataset &data,
                                                            const std::vector<MatrixEntry> &models)
    {
        std::vector<codecs::TransmissionReport> rows;
        for (const auto &entry : models)
        {
            std::vector<channel::ChannelConfig> grid;
            for (double snr : cfg.channel.snr_db)
            {
                auto c = cfg.channel_at(snr);
                c.equalization = entry.equalization;
                c.precoding = entry.precoding;
                grid.push_back(c);
            }
            auto reports = codecs::evaluate_codec_grid(codecs::GnnCodec(entry.model), data.test, grid,
                                                       cfg.evaluation.n_realizations, cfg.evaluation_seed());
            rows.insert(rows.end(), reports.begin(), reports.end());
        }
        return rows;
    }

    void write_reports(const std::filesystem::path &path, const std::vector<codecs::TransmissionReport> &rows)
    {
        if (path.has_parent_path())
            ensure_dir(path.parent_path());
        std::ofstream out(path, std::ios::trunc);
        out << codecs::report_csv_header() << '\n';
        for (const auto &r : rows)
            out << codecs::to_csv(r) << '\n';
        if (!out)
            throw ParameterError("cannot write '" + path.string() + "'");
    }

    std::filesystem::path model_path(const ExperimentConfig &cfg) { return cfg.output_dir / cfg.training.model_file; }

    std::filesystem::path matrix_model_path(const ExperimentConfig &cfg, channel::Equalization eq, bool precoding)
    {
        return cfg.output_dir /
               ("model_" + std::string(channel::to_string(eq)) + "_" + onoff(precoding) + ".bin");
    }

    CommandResult cmd_gen_data(const ExperimentConfig &cfg)
    {
        const auto dir = cfg.output_dir / "dataset";
        ensure_dir(dir);
        cloud::write_dataset(dir, load_data(cfg));
        return {{dir / cloud::kManifestName}};
    }

    CommandResult cmd_train(const ExperimentConfig &cfg, bool resume, bool verbose)
    {
        TrainOptions opt;
        opt.model_path = model_path(cfg);
        opt.log_path = cfg.output_dir / "train.csv";
        opt.resume = resume;
        opt.equalization = cfg.channel.equalization;
        opt.precoding = cfg.channel.precoding;
        opt.verbose = verbose;
        train_model(cfg, load_data(cfg), opt);
        return {{opt.model_path, opt.log_path}};
    }

    CommandResult cmd_sweep_overhead(const ExperimentConfig &cfg)
    {
        const auto model = load_trained(model_path(cfg));
        const auto path = cfg.output_dir / "sweep-overhead.csv";
        write_reports(path, sweep_overhead(cfg, load_data(cfg), model));
        return {{path}};
    }

    CommandResult cmd_sweep_snr(const ExperimentConfig &cfg)
    {
        ModelPtr model;
        for (const auto &name : cfg.codecs.snr_sweep)
            if (name == "gnn")
                model = load_trained(model_path(cfg));
        const auto path = cfg.output_dir / "sweep-snr.csv";
        write_reports(path, sweep_snr(cfg, load_data(cfg), model));
        return {{path}};
    }

    CommandResult cmd_matrix(const ExperimentConfig &cfg, bool resume, bool verbose)
    {
        const auto data = load_data(cfg);
        CommandResult result;
        std::vector<MatrixEntry> models;
        for (const auto &[eq, pc] : matrix_combinations())
        {
            TrainOptions opt;
            opt.model_path = matrix_model_path(cfg, eq, pc);
            opt.log_path = cfg.output_dir / ("train_" + std::string(channel::to_string(eq)) + "_" + onoff(pc) + ".csv");
            opt.resume = resume;
            opt.equalization = eq;
            opt.precoding = pc;
            opt.verbose = verbose;
            if (verbose)
                std::fprintf(stderr, "training %s-equalization, precoding %s\n", channel::to_string(eq).data(),
                             onoff(pc));
            auto trained = train_model(cfg, data, opt);
            models.push_back({eq, pc, std::make_shared<neural::ModelParams>(std::move(trained.state.params))});
            result.files.push_back(opt.model_path);
            result.files.push_back(opt.log_path);
        }
        const auto path = cfg.output_dir / "matrix.csv";
        write_reports(path, evaluate_matrix(cfg, data, models));
        result.files.push_back(path);
        return result;
    }

    CommandResult cmd_snapshot(const ExperimentConfig &cfg, const std::string &cloud_id, std::optional<double> snr_db)
    {
        const auto data = load_data(cfg);
        const cloud::PointCloud *original = nullptr;
        if (cloud_id.empty())
            original = &data.test.front();
        for (const auto *split : {&data.test, &data.train})
            for (const auto &c : *split)
                if (!original && c.id() == cloud_id)
                    original = &c;
        if (!original)
            throw ParameterError("unknown cloud id '" + cloud_id + "'");

        const double snr = snr_db.value_or(cfg.evaluation.snapshot_snr_db);
        const auto ch = cfg.channel_at(snr);
        const auto dir = cfg.output_dir / "snapshot";
        ensure_dir(dir);

        ModelPtr model;
        if (std::filesystem::exists(model_path(cfg)))
            model = load_trained(model_path(cfg));
        else
            std::fprintf(stderr, "note: no model at %s, skipping the gnn codec\n", model_path(cfg).string().c_str());

        CommandResult result;
        const auto original_path = dir / (original->id() + "_original.ply");
        cloud::save_cloud(*original, original_path);
        result.files.push_back(original_path);

        std::ofstream csv(dir / "snapshot.csv", std::ios::trunc);
        csv << "cloud,codec,snr_db,chamfer,file,seed\n";
        csv.precision(9);
        const std::uint64_t seed = cfg.evaluation_seed();
        for (const std::string name : {"gnn", "holocast", "holocast_givens", "softcast"})
        {
            if (name == "gnn" && !model)
                continue;
            auto codec = make_codec(cfg, name, model);
            cloud::PointCloud recon = codecs::reconstruct(*codec, *original, ch, seed);
            recon.set_id(original->id() + "_" + name);
            const auto file = dir / (recon.id() + ".ply");
            cloud::save_cloud(recon, file);
            csv << original->id() << ',' << codec->name() << ',' << snr << ','
                << cloud::chamfer_distance(*original, recon) << ',' << file.filename().string() << ',' << seed
                << '\n';
            result.files.push_back(file);
        }
        if (!csv)
            throw ParameterError("cannot write snapshot.csv");
        result.files.push_back(dir / "snapshot.csv");
        return result;
    }
}
