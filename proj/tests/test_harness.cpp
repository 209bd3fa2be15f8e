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

#include <doctest.h>

#include "softpc/cloud/chamfer.hpp"
#include "softpc/cloud/cloud_io.hpp"
#include "softpc/codecs/softcast.hpp"
#include "softpc/error.hpp"
#include "softpc/harness/commands.hpp"
#include "softpc/harness/config.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace softpc;
using namespace softpc::harness;
namespace fs = std::filesystem;

namespace
{
    fs::path scratch_dir(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / ("softpc_harness_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::vector<std::string> lines_of(const fs::path &p)
    {
        std::vector<std::string> out;
        std::ifstream in(p);
        for (std::string line; std::getline(in, line);)
            out.push_back(line);
        return out;
    }

    std::vector<std::string> split(const std::string &s)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        for (std::string f; std::getline(ss, f, ',');)
            out.push_back(f);
        return out;
    }

    /// epoch,loss columns (wall time varies between runs).
    std::vector<std::string> epoch_loss(const fs::path &csv)
    {
        std::vector<std::string> out;
        for (const auto &line : lines_of(csv))
            out.push_back(line.substr(0, line.rfind(',')));
        return out;
    }

    ExperimentConfig tiny_config(const fs::path &out)
    {
        ExperimentConfig cfg;
        cfg.seed = 7;
        cfg.output_dir = out;
        cfg.dataset.n_train = 20;
        cfg.dataset.n_test = 3;
        cfg.dataset.points = 64;
        cfg.model.n_points = 64;
        cfg.model.knn_k = 4;
        cfg.model.channels = {6, 8, 4};
        cfg.model.decoder_hidden = 12;
        cfg.training.epochs = 200;
        cfg.training.batch_size = 5;
        cfg.training.checkpoint_every = 40;
        cfg.evaluation.n_realizations = 2;
        cfg.codecs.holocast_block_sizes = {16, 32};
        cfg.codecs.holocast_block_size = 32;
        cfg.codecs.givens_block_size = 32;
        cfg.codecs.givens_bits = {2, 6, 12};
        cfg.codecs.softcast_fractions = {0.25, 1.0};
        return cfg;
    }
}

TEST_SUITE("harness")
{
    TEST_CASE("config defaults survive a dump/parse round trip")
    {
        const ExperimentConfig def;
        CHECK(dump_config(parse_config("{}")) == dump_config(def));
        CHECK(dump_config(parse_config(dump_config(def))) == dump_config(def));
        CHECK(def.dataset.n_train == 200);
        CHECK(def.dataset.n_test == 34);
        CHECK(def.dataset.points == 512);
        CHECK(def.model.knn_k == 8);
        CHECK(def.channel.equalization == channel::Equalization::Post);
        CHECK(def.channel.precoding);
        CHECK(def.channel.snr_db == std::vector<double>{-5, 0, 5, 10, 15, 20, 25});
        CHECK(def.evaluation.n_realizations == 20);
    }

    TEST_CASE("config overrides and cross-section coupling")
    {
        const auto cfg = parse_config(R"({
            // comments are allowed
            "seed": 99,
            "dataset": {"points": 256},
            "channel": {"mode": "awgn", "equalization": "pre", "precoding": false, "avg_power": 2.0},
            "training": {"lr": 0.01, "snr_range_db": [0, 10]}
        })");
        CHECK(cfg.seed == 99);
        CHECK(cfg.model.n_points == 256);
        CHECK(cfg.model.avg_power == 2.0);
        CHECK(cfg.channel.mode == channel::FadingMode::Awgn);
        CHECK(cfg.channel.equalization == channel::Equalization::Pre);
        CHECK_FALSE(cfg.channel.precoding);
        CHECK(cfg.training.adam.lr == 0.01);
        REQUIRE(cfg.training.snr_range_db);
        CHECK(cfg.training.snr_range_db->second == 10.0);
        CHECK(cfg.softcast_budget(0.25) == 96);
        CHECK(cfg.softcast_budget(0.0001) == 3);
        CHECK(cfg.channel_at(10).noise_variance() == doctest::Approx(0.2));
        CHECK(cfg.dataset_seed() != cfg.init_seed());
    }

    TEST_CASE("config errors")
    {
        CHECK_THROWS_AS(parse_config(R"({"sed": 1})"), ParameterError);
        CHECK_THROWS_AS(parse_config(R"({"channel": {"snr": [1]}})"), ParameterError);
        CHECK_THROWS_AS(parse_config(R"({"channel": {"snr_db": []}})"), ParameterError);
        CHECK_THROWS_AS(parse_config(R"({"channel": {"mode": "rician"}})"), ParameterError);
        CHECK_THROWS_AS(parse_config(R"({"training": {"epochs": "many"}})"), ParameterError);
        CHECK_THROWS_AS(parse_config(R"({"dataset": {"path": "/definitely/not/here"}})"), ParameterError);
        CHECK_THROWS_AS(parse_config("{\"seed\": 1,\n  oops}"), ParseError);
        CHECK_THROWS_AS(load_config("/definitely/not/here.json"), ParseError);
    }

    TEST_CASE("synthetic data split and dataset directories")
    {
        const auto dir = scratch_dir("data");
        auto cfg = tiny_config(dir);
        const auto data = load_data(cfg);
        CHECK(data.train.size() == 20);
        CHECK(data.test.size() == 3);
        CHECK(data.train.front().size() == 64);

        cmd_gen_data(cfg);
        cfg.dataset.path = dir / "dataset";
        const auto reread = load_data(cfg);
        REQUIRE(reread.train.size() == 20);
        REQUIRE(reread.test.size() == 3);
        CHECK(reread.test[1].size() == 64);
        CHECK(cloud::chamfer_distance(reread.test[1], data.test[1]) < 1e-6);
    }

    TEST_CASE("train writes one CSV row per epoch and reruns identically")
    {
        const auto dir = scratch_dir("train");
        const auto cfg = tiny_config(dir / "a");
        const auto files = cmd_train(cfg, false, false).files;
        REQUIRE(files.size() == 2);
        const auto rows = lines_of(files[1]);
        REQUIRE(rows.size() == 201);
        CHECK(rows.front() == train_csv_header());
        CHECK(split(rows[1]).at(0) == "1");
        CHECK(split(rows[200]).at(0) == "200");
        CHECK(std::stod(split(rows[200]).at(1)) < std::stod(split(rows[1]).at(1)));

        auto again = cfg;
        again.output_dir = dir / "b";
        cmd_train(again, false, false);
        CHECK(epoch_loss(again.output_dir / "train.csv") == epoch_loss(cfg.output_dir / "train.csv"));
        CHECK(slurp(model_path(again)) == slurp(model_path(cfg)));
    }

    TEST_CASE("resumed training equals continuous training")
    {
        const auto dir = scratch_dir("resume");
        auto full = tiny_config(dir / "full");
        full.training.epochs = 30;
        full.training.checkpoint_every = 7;
        cmd_train(full, false, false);

        auto part = full;
        part.output_dir = dir / "part";
        part.training.epochs = 12;
        cmd_train(part, false, false);
        part.training.epochs = 30;
        cmd_train(part, true, false);

        CHECK(slurp(model_path(part)) == slurp(model_path(full)));
        CHECK(epoch_loss(part.output_dir / "train.csv") == epoch_loss(full.output_dir / "train.csv"));

        // a stale log longer than the checkpoint is cut back before appending
        auto stale = full;
        stale.output_dir = dir / "stale";
        stale.training.epochs = 14;
        cmd_train(stale, false, false);
        {
            std::ofstream log(stale.output_dir / "train.csv", std::ios::app);
            log << "15,1.0,0.0\n16,1.0,0.0\n";
        }
        stale.training.epochs = 30;
        cmd_train(stale, true, false);
        CHECK(epoch_loss(stale.output_dir / "train.csv") == epoch_loss(full.output_dir / "train.csv"));
    }

    TEST_CASE("sweeps: row layout, GNN metadata and bit-identical reruns")
    {
        const auto dir = scratch_dir("sweep");
        auto cfg = tiny_config(dir);
        cfg.training.epochs = 5;
        CHECK_THROWS_AS(cmd_sweep_overhead(cfg), ParameterError);
        cmd_train(cfg, false, false);

        const auto ov = lines_of(cmd_sweep_overhead(cfg).files.at(0));
        REQUIRE(ov.size() == 1 + 1 + 2 + 3 + 2);
        CHECK(ov[0] == codecs::report_csv_header());
        const auto gnn = split(ov[1]);
        CHECK(gnn[0] == "gnn");
        CHECK(gnn[1] == "20");
        CHECK(gnn[5] == "0");
        CHECK(split(ov[2])[0] == "holocast_n16");
        CHECK(split(ov[5])[0] == "holocast_givens_b6");
        CHECK(split(ov[7])[0] == "softcast_f0.25");
        CHECK(split(ov[7])[4] == "24");

        const auto snr_path = cmd_sweep_snr(cfg).files.at(0);
        const auto first = slurp(snr_path);
        const auto snr = lines_of(snr_path);
        REQUIRE(snr.size() == 1 + 7 * 4);
        std::map<std::string, int> per_codec;
        for (std::size_t i = 1; i < snr.size(); ++i)
            ++per_codec[split(snr[i])[0]];
        CHECK(per_codec.size() == 4);
        for (const auto &[name, n] : per_codec)
            CHECK_MESSAGE(n == 7, name);
        CHECK(split(snr[1])[1] == "-5");
        CHECK(split(snr[7])[1] == "25");
        CHECK(slurp(cmd_sweep_snr(cfg).files.at(0)) == first);
    }

    TEST_CASE("sweep rows are re-derivable from a single evaluation")
    {
        const auto dir = scratch_dir("rederive");
        auto cfg = tiny_config(dir);
        cfg.codecs.snr_sweep = {"softcast"};
        const auto data = load_data(cfg);
        const auto rows = sweep_snr(cfg, data, nullptr);
        REQUIRE(rows.size() == 7);
        const codecs::SoftCastCodec codec(cfg.softcast_budget(cfg.codecs.softcast_fraction));
        const auto one = codecs::evaluate_codec(codec, data.test, cfg.channel_at(10), cfg.evaluation.n_realizations,
                                                rows[3].seed);
        CHECK(codecs::to_csv(one) == codecs::to_csv(rows[3]));
        cfg.codecs.snr_sweep = {"gnn"};
        CHECK_THROWS_AS(sweep_snr(cfg, data, nullptr), ParameterError);
    }

    TEST_CASE("matrix: four models, awgn makes precoding irrelevant")
    {
        const auto dir = scratch_dir("matrix");
        auto cfg = tiny_config(dir);
        cfg.training.epochs = 4;
        cfg.channel.mode = channel::FadingMode::Awgn;
        cfg.channel.snr_db = {0, 20};
        const auto res = cmd_matrix(cfg, false, false);
        const auto rows = lines_of(res.files.back());
        REQUIRE(rows.size() == 1 + 4 * 2);
        for (const auto &[eq, pc] : matrix_combinations())
            CHECK(fs::exists(matrix_model_path(cfg, eq, pc)));
        // same init and training seeds: over awgn the on/off models and rows coincide
        CHECK(slurp(matrix_model_path(cfg, channel::Equalization::Post, true)) ==
              slurp(matrix_model_path(cfg, channel::Equalization::Post, false)));
        for (std::size_t i = 1; i <= 2; ++i)
        {
            auto off = split(rows[i]), on = split(rows[i + 2]);
            CHECK(off[2] == "pre");
            CHECK(off[3] == "off");
            CHECK(on[3] == "on");
            CHECK(off[7] == on[7]);
        }
        const auto before = slurp(res.files.back());
        cmd_matrix(cfg, true, false);
        CHECK(slurp(res.files.back()) == before);
    }

    TEST_CASE("snapshot chamfer values recompute from the written files")
    {
        const auto dir = scratch_dir("snapshot");
        auto cfg = tiny_config(dir);
        cfg.training.epochs = 5;
        cmd_train(cfg, false, false);
        const auto data = load_data(cfg);
        const std::string id = data.test[1].id();

        const auto files = cmd_snapshot(cfg, id, 15.0).files;
        REQUIRE(files.size() == 1 + 4 + 1);
        const auto original = cloud::load_cloud(files[0]);
        const auto rows = lines_of(files.back());
        REQUIRE(rows.size() == 5);
        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            const auto f = split(rows[i]);
            CHECK(f[0] == id);
            CHECK(f[2] == "15");
            const auto recon = cloud::load_cloud(files[0].parent_path() / f[4]);
            CHECK(cloud::chamfer_distance(original, recon) == doctest::Approx(std::stod(f[3])).epsilon(1e-5));
        }
        CHECK_THROWS_AS(cmd_snapshot(cfg, "no_such_cloud", std::nullopt), ParameterError);
    }

    TEST_CASE("snapshot over a near noiseless awgn channel reproduces the cloud via HoloCast")
    {
        const auto dir = scratch_dir("snapshot_awgn");
        auto cfg = tiny_config(dir);
        cfg.channel.mode = channel::FadingMode::Awgn;
        const auto files = cmd_snapshot(cfg, "", 120.0).files;
        REQUIRE(files.size() == 1 + 3 + 1); // no model yet: gnn skipped
        const auto rows = lines_of(files.back());
        const auto holo = split(rows.at(1));
        CHECK(holo[1] == "holocast");
        CHECK(std::stod(holo[3]) < 1e-5);
    }
}
