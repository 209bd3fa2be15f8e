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

#include "softpc/harness/config.hpp"

#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace softpc::harness
{
    using nlohmann::json;

    namespace
    {
        // Seed sub-streams of the master seed.
        enum : std::uint64_t
        {
            kDatasetStream = 1,
            kInitStream = 2,
            kTrainStream = 3,
            kEvalStream = 4,
        };

        void require_keys(const json &obj, const std::string &where, std::initializer_list<const char *> allowed)
        {
            if (!obj.is_object())
                throw ParameterError(where + ": expected an object");
            for (const auto &item : obj.items())
            {
                bool known = false;
                for (const char *k : allowed)
                    known = known || item.key() == k;
                if (!known)
                    throw ParameterError(where + ": unknown key '" + item.key() + "'");
            }
        }

        template <typename T>
        void read(const json &obj, const char *key, T &out)
        {
            if (obj.contains(key))
                out = obj.at(key).get<T>();
        }

        json channel_json(const ChannelSection &c)
        {
            return {{"mode", to_string(c.mode)},
                    {"equalization", to_string(c.equalization)},
                    {"precoding", c.precoding},
                    {"avg_power", c.avg_power},
                    {"snr_db", c.snr_db}};
        }
    }

    void ExperimentConfig::validate() const
    {
        if (dataset.n_train < 1 || dataset.n_test < 1)
            throw ParameterError("dataset: n_train and n_test must be >= 1");
        if (dataset.points < 8)
            throw ParameterError("dataset: points must be >= 8");
        if (dataset.path && !std::filesystem::is_directory(*dataset.path))
            throw ParameterError("dataset: path '" + dataset.path->string() + "' is not a directory");
        model.validate();
        if (model.n_points != dataset.points)
            throw ParameterError("model.n_points must equal dataset.points");
        if (training.epochs < 1 || training.batch_size < 1)
            throw ParameterError("training: epochs and batch_size must be >= 1");
        if (!(training.adam.lr >= 0.0))
            throw ParameterError("training: lr must be >= 0");
        if (!(training.lr_decay_factor > 0.0 && training.lr_decay_factor <= 1.0))
            throw ParameterError("training: lr_decay_factor must lie in (0, 1]");
        if (training.snr_range_db && !(training.snr_range_db->first <= training.snr_range_db->second))
            throw ParameterError("training: snr_range_db must be [lo, hi] with lo <= hi");
        if (channel.snr_db.empty())
            throw ParameterError("channel: snr_db list must be nonempty");
        if (!(channel.avg_power > 0.0))
            throw ParameterError("channel: avg_power must be > 0");
        if (evaluation.n_realizations < 1)
            throw ParameterError("evaluation: n_realizations must be >= 1");
        for (const auto &name : codecs.snr_sweep)
            if (name != "gnn" && name != "holocast" && name != "holocast_givens" && name != "softcast")
                throw ParameterError("codecs: unknown codec '" + name + "' in snr_sweep");
        for (std::size_t b : codecs.holocast_block_sizes)
            if (b < 2)
                throw ParameterError("codecs: holocast block sizes must be >= 2");
        if (codecs.holocast_block_size < 2 || codecs.givens_block_size < 2)
            throw ParameterError("codecs: block sizes must be >= 2");
        for (unsigned b : codecs.givens_bits)
            if (b < 2 || b > 16)
                throw ParameterError("codecs: givens bits must lie in [2, 16]");
        if (codecs.givens_bits_snr < 2 || codecs.givens_bits_snr > 16)
            throw ParameterError("codecs: givens_bits_snr must lie in [2, 16]");
        for (double f : codecs.softcast_fractions)
            if (!(f > 0.0 && f <= 1.0))
                throw ParameterError("codecs: softcast fractions must lie in (0, 1]");
        if (!(codecs.softcast_fraction > 0.0 && codecs.softcast_fraction <= 1.0))
            throw ParameterError("codecs: softcast_fraction must lie in (0, 1]");
    }

    channel::ChannelConfig ExperimentConfig::channel_at(double snr_db) const
    {
        channel::ChannelConfig c;
        c.snr_db = snr_db;
        c.mode = channel.mode;
        c.equalization = channel.equalization;
        c.precoding = channel.precoding;
        c.avg_power = channel.avg_power;
        return c;
    }

    neural::TrainingConfig ExperimentConfig::training_config(channel::Equalization eq, bool precoding) const
    {
        neural::TrainingConfig t;
        t.channel = channel_at(training.snr_db);
        t.channel.equalization = eq;
        t.channel.precoding = precoding;
        t.snr_range_db = training.snr_range_db;
        t.adam = training.adam;
        t.lr_decay_every = training.lr_decay_every;
        t.lr_decay_factor = training.lr_decay_factor;
        t.epochs = training.epochs;
        t.batch_size = training.batch_size;
        t.seed = training_seed();
        return t;
    }

    std::size_t ExperimentConfig::softcast_budget(double fraction) const
    {
        const double reals = fraction * 3.0 * static_cast<double>(dataset.points);
        return std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(reals / 2.0 - 1e-9)));
    }

    std::uint64_t ExperimentConfig::dataset_seed() const { return derive_seed(seed, {kDatasetStream}); }
    std::uint64_t ExperimentConfig::init_seed() const { return derive_seed(seed, {kInitStream}); }
    std::uint64_t ExperimentConfig::training_seed() const { return derive_seed(seed, {kTrainStream}); }
    std::uint64_t ExperimentConfig::evaluation_seed() const { return derive_seed(seed, {kEvalStream}); }

    ExperimentConfig parse_config(const std::string &text, const std::string &source)
    {
        json root;
        try
        {
            root = json::parse(text, nullptr, true, true);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError(e.what(), 0, source);
        }

        ExperimentConfig cfg;
        try
        {
            require_keys(root, "config",
                         {"seed", "output_dir", "dataset", "model", "training", "channel", "evaluation", "codecs"});
            read(root, "seed", cfg.seed);
            if (root.contains("output_dir"))
                cfg.output_dir = root.at("output_dir").get<std::string>();

            if (root.contains("dataset"))
            {
                const json &d = root.at("dataset");
                require_keys(d, "dataset", {"path", "family", "n_train", "n_test", "points", "pose_jitter"});
                if (d.contains("path") && !d.at("path").is_null())
                    cfg.dataset.path = d.at("path").get<std::string>();
                read(d, "family", cfg.dataset.family);
                read(d, "n_train", cfg.dataset.n_train);
                read(d, "n_test", cfg.dataset.n_test);
                read(d, "points", cfg.dataset.points);
                read(d, "pose_jitter", cfg.dataset.pose_jitter);
            }
            cfg.model.n_points = cfg.dataset.points;

            if (root.contains("model"))
            {
                const json &m = root.at("model");
                require_keys(m, "model", {"knn_k", "channels", "ratios", "decoder_hidden", "leaky_slope"});
                read(m, "knn_k", cfg.model.knn_k);
                read(m, "channels", cfg.model.channels);
                read(m, "ratios", cfg.model.ratios);
                read(m, "decoder_hidden", cfg.model.decoder_hidden);
                read(m, "leaky_slope", cfg.model.leaky_slope);
            }

            if (root.contains("training"))
            {
                const json &t = root.at("training");
                require_keys(t, "training",
                             {"epochs", "batch_size", "lr", "beta1", "beta2", "eps", "lr_decay_every",
                              "lr_decay_factor", "snr_db", "snr_range_db", "checkpoint_every", "model_file"});
                read(t, "epochs", cfg.training.epochs);
                read(t, "batch_size", cfg.training.batch_size);
                read(t, "lr", cfg.training.adam.lr);
                read(t, "beta1", cfg.training.adam.beta1);
                read(t, "beta2", cfg.training.adam.beta2);
                read(t, "eps", cfg.training.adam.eps);
                read(t, "lr_decay_every", cfg.training.lr_decay_every);
                read(t, "lr_decay_factor", cfg.training.lr_decay_factor);
                read(t, "snr_db", cfg.training.snr_db);
                if (t.contains("snr_range_db") && !t.at("snr_range_db").is_null())
                {
                    auto r = t.at("snr_range_db").get<std::vector<double>>();
                    if (r.size() != 2)
                        throw ParameterError("training: snr_range_db must be [lo, hi]");
                    cfg.training.snr_range_db = std::make_pair(r[0], r[1]);
                }
                read(t, "checkpoint_every", cfg.training.checkpoint_every);
                read(t, "model_file", cfg.training.model_file);
            }

            if (root.contains("channel"))
            {
                const json &c = root.at("channel");
                require_keys(c, "channel", {"mode", "equalization", "precoding", "avg_power", "snr_db"});
                if (c.contains("mode"))
                    cfg.channel.mode = channel::parse_fading_mode(c.at("mode").get<std::string>());
                if (c.contains("equalization"))
                    cfg.channel.equalization = channel::parse_equalization(c.at("equalization").get<std::string>());
                read(c, "precoding", cfg.channel.precoding);
                read(c, "avg_power", cfg.channel.avg_power);
                read(c, "snr_db", cfg.channel.snr_db);
            }
            cfg.model.avg_power = cfg.channel.avg_power;

            if (root.contains("evaluation"))
            {
                const json &e = root.at("evaluation");
                require_keys(e, "evaluation", {"n_realizations", "overhead_snr_db", "snapshot_snr_db", "floor_snr_db"});
                read(e, "n_realizations", cfg.evaluation.n_realizations);
                read(e, "overhead_snr_db", cfg.evaluation.overhead_snr_db);
                read(e, "snapshot_snr_db", cfg.evaluation.snapshot_snr_db);
                read(e, "floor_snr_db", cfg.evaluation.floor_snr_db);
            }

            if (root.contains("codecs"))
            {
                const json &k = root.at("codecs");
                require_keys(k, "codecs",
                             {"snr_sweep", "holocast_block_sizes", "holocast_block_size", "givens_block_size",
                              "givens_bits", "givens_bits_snr", "softcast_fractions", "softcast_fraction"});
                read(k, "snr_sweep", cfg.codecs.snr_sweep);
                read(k, "holocast_block_sizes", cfg.codecs.holocast_block_sizes);
                read(k, "holocast_block_size", cfg.codecs.holocast_block_size);
                read(k, "givens_block_size", cfg.codecs.givens_block_size);
                read(k, "givens_bits", cfg.codecs.givens_bits);
                read(k, "givens_bits_snr", cfg.codecs.givens_bits_snr);
                read(k, "softcast_fractions", cfg.codecs.softcast_fractions);
                read(k, "softcast_fraction", cfg.codecs.softcast_fraction);
            }
        }
        catch (const json::exception &e)
        {
            throw ParameterError(source + ": " + e.what());
        }
        cfg.validate();
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open config", 0, path.string());
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str(), path.string());
    }

    std::string dump_config(const ExperimentConfig &cfg)
    {
        json root;
        root["seed"] = cfg.seed;
        root["output_dir"] = cfg.output_dir.string();
        root["dataset"] = {{"path", cfg.dataset.path ? json(cfg.dataset.path->string()) : json(nullptr)},
                           {"family", cfg.dataset.family},
                           {"n_train", cfg.dataset.n_train},
                           {"n_test", cfg.dataset.n_test},
                           {"points", cfg.dataset.points},
                           {"pose_jitter", cfg.dataset.pose_jitter}};
        root["model"] = {{"knn_k", cfg.model.knn_k},
                         {"channels", cfg.model.channels},
                         {"ratios", cfg.model.ratios},
                         {"decoder_hidden", cfg.model.decoder_hidden},
                         {"leaky_slope", cfg.model.leaky_slope}};
        json range = nullptr;
        if (cfg.training.snr_range_db)
            range = {cfg.training.snr_range_db->first, cfg.training.snr_range_db->second};
        root["training"] = {{"epochs", cfg.training.epochs},
                            {"batch_size", cfg.training.batch_size},
                            {"lr", cfg.training.adam.lr},
                            {"beta1", cfg.training.adam.beta1},
                            {"beta2", cfg.training.adam.beta2},
                            {"eps", cfg.training.adam.eps},
                            {"lr_decay_every", cfg.training.lr_decay_every},
                            {"lr_decay_factor", cfg.training.lr_decay_factor},
                            {"snr_db", cfg.training.snr_db},
                            {"snr_range_db", range},
                            {"checkpoint_every", cfg.training.checkpoint_every},
                            {"model_file", cfg.training.model_file}};
        root["channel"] = channel_json(cfg.channel);
        root["evaluation"] = {{"n_realizations", cfg.evaluation.n_realizations},
                              {"overhead_snr_db", cfg.evaluation.overhead_snr_db},
                              {"snapshot_snr_db", cfg.evaluation.snapshot_snr_db},
                              {"floor_snr_db", cfg.evaluation.floor_snr_db}};
        root["codecs"] = {{"snr_sweep", cfg.codecs.snr_sweep},
                          {"holocast_block_sizes", cfg.codecs.holocast_block_sizes},
                          {"holocast_block_size", cfg.codecs.holocast_block_size},
                          {"givens_block_size", cfg.codecs.givens_block_size},
                          {"givens_bits", cfg.codecs.givens_bits},
                          {"givens_bits_snr", cfg.codecs.givens_bits_snr},
                          {"softcast_fractions", cfg.codecs.softcast_fractions},
                          {"softcast_fraction", cfg.codecs.softcast_fraction}};
        return root.dump(2) + "\n";
    }
}
