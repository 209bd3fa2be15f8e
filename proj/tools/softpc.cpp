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

// softpc: experiment driver. Every subcommand reads one config (plus --seed/--out
// overrides) and writes CSV/PLY files under the output directory.

#include "softpc/error.hpp"
#include "softpc/harness/commands.hpp"
#include "softpc/harness/config.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace
{
    using namespace softpc;

    std::string one_line(std::string s)
    {
        for (char &c : s)
            if (c == '\n' || c == '\r')
                c = ' ';
        return s;
    }

    int fail(const char *kind, const std::string &msg)
    {
        std::fprintf(stderr, "error: %s: %s\n", kind, one_line(msg).c_str());
        return 2;
    }

    void report(const harness::CommandResult &r)
    {
        for (const auto &f : r.files)
            std::cout << f.string() << '\n';
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"softpc: soft point cloud transmission experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool quiet = false;
    app.add_option("--config", config_path, "experiment config (JSON); defaults apply when omitted")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--out", out_dir, "output directory override");
    app.add_flag("-q,--quiet", quiet, "no progress on stderr");

    auto *train = app.add_subcommand("train", "train the GNN autoencoder (writes model + train.csv)");
    bool resume = false;
    train->add_flag("--resume", resume, "continue from the existing checkpoint");

    app.add_subcommand("sweep-overhead", "chamfer vs. total symbols at a fixed SNR");
    app.add_subcommand("sweep-snr", "chamfer vs. channel SNR per codec");

    auto *matrix = app.add_subcommand("matrix", "train and evaluate all equalization/precoding combinations");
    matrix->add_flag("--resume", resume, "continue from existing checkpoints");

    auto *snapshot = app.add_subcommand("snapshot", "write original and reconstructed clouds as PLY");
    std::string cloud_id;
    std::optional<double> snr;
    snapshot->add_option("--cloud-id", cloud_id, "cloud id (default: first test cloud)");
    snapshot->add_option("--snr", snr, "channel SNR in dB");

    app.add_subcommand("gen-data", "write the configured dataset to <out>/dataset");
    app.add_subcommand("print-config", "print the effective config with all defaults");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return fail("usage", e.what());
    }

    try
    {
        harness::ExperimentConfig cfg =
            config_path.empty() ? harness::ExperimentConfig{} : harness::load_config(config_path);
        if (seed)
            cfg.seed = *seed;
        if (!out_dir.empty())
            cfg.output_dir = out_dir;
        cfg.validate();

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "print-config")
            std::cout << harness::dump_config(cfg) << '\n';
        else if (cmd == "train")
            report(harness::cmd_train(cfg, resume, !quiet));
        else if (cmd == "sweep-overhead")
            report(harness::cmd_sweep_overhead(cfg));
        else if (cmd == "sweep-snr")
            report(harness::cmd_sweep_snr(cfg));
        else if (cmd == "matrix")
            report(harness::cmd_matrix(cfg, resume, !quiet));
        else if (cmd == "snapshot")
            report(harness::cmd_snapshot(cfg, cloud_id, snr));
        else if (cmd == "gen-data")
            report(harness::cmd_gen_data(cfg));
    }
    catch (const ParseError &e)
    {
        return fail("parse", e.what());
    }
    catch (const FormatError &e)
    {
        return fail("format", e.what());
    }
    catch (const ParameterError &e)
    {
        return fail("parameter", e.what());
    }
    catch (const NumericalError &e)
    {
        return fail("numerical", e.what());
    }
    catch (const DegenerateInputError &e)
    {
        return fail("degenerate", e.what());
    }
    catch (const std::exception &e)
    {
        return fail("internal", e.what());
    }
    return 0;
}
