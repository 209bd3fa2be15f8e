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

#include "doctest.h"
#include "oracles.hpp"

#include "softpc/channel/channel.hpp"
#include "softpc/cloud/chamfer.hpp"
#include "softpc/cloud/knn_graph.hpp"
#include "softpc/error.hpp"
#include "softpc/neural/adam.hpp"
#include "softpc/neural/autoencoder.hpp"
#include "softpc/neural/checkpoint.hpp"
#include "softpc/neural/layers.hpp"
#include "softpc/neural/trainer.hpp"

#include <sstream>

using namespace softpc;
using namespace softpc::neural;

namespace
{
    Architecture tiny_arch()
    {
        Architecture a;
        a.n_points = 8;
        a.knn_k = 1;
        a.channels = {4, 5, 3};
        a.ratios = {0.75, 0.5, 0.5};
        a.decoder_hidden = 5;
        return a;
    }

    cloud::KnnGraph random_graph(std::size_t n, std::size_t k, Rng &rng)
    {
        return cloud::build_knn_graph(oracle::random_cloud(n, rng), k);
    }

    /// Kept-vertex lists of every pooling stage.
    std::vector<std::vector<std::size_t>> selection(const Matrix &points, const cloud::KnnGraph &g,
                                                    const ModelParams &params)
    {
        EncoderCache cache;
        encode(points, g, params, &cache);
        std::vector<std::vector<std::size_t>> out;
        for (const auto &s : cache.stages)
            out.push_back(s.pool.kept);
        return out;
    }

    /// Smallest gap between consecutive sorted scores.
    double min_score_gap(std::vector<double> s)
    {
        std::sort(s.begin(), s.end());
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < s.size(); ++i)
            gap = std::min(gap, s[i] - s[i - 1]);
        return gap;
    }

    std::vector<double> flat_params(const ModelParams &p)
    {
        std::vector<double> v;
        for (const Tensor2 *t : p.tensors())
            v.insert(v.end(), t->value.values().begin(), t->value.values().end());
        return v;
    }

    std::vector<double> flat_grads(const ModelParams &p)
    {
        std::vector<double> v;
        for (const Tensor2 *t : p.tensors())
            v.insert(v.end(), t->grad.values().begin(), t->grad.values().end());
        return v;
    }

    void set_param(ModelParams &p, std::size_t flat_index, double value)
    {
        for (Tensor2 *t : p.tensors())
        {
            if (flat_index < t->value.size())
            {
                t->value.values()[flat_index] = value;
                return;
            }
            flat_index -= t->value.size();
        }
    }

    Matrix as_row(const std::vector<double> &v) { return Matrix(1, v.size(), v); }

    /// Parameters drawn from U(-1, 1) so pooling scores are well separated.
    ModelParams spread_params(const Architecture &a, Rng &rng)
    {
        ModelParams p = init_params(a, 0);
        for (Tensor2 *t : p.tensors())
            t->value = oracle::random_matrix(t->value.rows(), t->value.cols(), rng);
        return p;
    }
}

TEST_SUITE("neural")
{
    TEST_CASE("leaky relu")
    {
        Matrix x{{-2, 0, 3}};
        Matrix y = leaky_relu(x, 0.01);
        CHECK(y == Matrix{{-0.02, 0, 3}});
        Matrix g = leaky_relu_backward(Matrix{{1, 1, 1}}, x, 0.01);
        CHECK(g == Matrix{{0.01, 1, 1}});
    }

    TEST_CASE("graph convolution hand cases")
    {
        cloud::KnnGraph single(1, {{}});
        Matrix x{{1.5, -2.0}};
        CHECK(gcn_forward(x, single, Matrix::identity(2), Matrix(1, 2)) == x);

        cloud::KnnGraph pair(1, {{1}, {0}});
        Matrix same{{0.3, 0.7}, {0.3, 0.7}};
        Matrix out = gcn_forward(same, pair, Matrix::identity(2), Matrix(1, 2));
        CHECK(max_abs(out - same) < 1e-15);

        CHECK_THROWS_AS(gcn_forward(Matrix(3, 2), pair, Matrix::identity(2), Matrix(1, 2)), ParameterError);
    }

    TEST_CASE("graph convolution gradients")
    {
        Rng rng(1);
        for (int trial = 0; trial < 20; ++trial)
        {
            const std::size_t n = 6 + static_cast<std::size_t>(trial % 5), cin = 3, cout = 4;
            auto g = random_graph(n, 2, rng);
            Matrix x = oracle::random_matrix(n, cin, rng);
            Matrix theta = oracle::random_matrix(cin, cout, rng);
            Matrix bias = oracle::random_matrix(1, cout, rng);
            Matrix w = oracle::random_matrix(n, cout, rng);

            GcnCache cache;
            gcn_forward(x, g, theta, bias, &cache);
            GcnGrads grads = gcn_backward(w, g, theta, cache);

            auto fx = [&](const Matrix &v) { return oracle::dot(w, gcn_forward(v, g, theta, bias)); };
            auto ft = [&](const Matrix &v) { return oracle::dot(w, gcn_forward(x, g, v, bias)); };
            auto fb = [&](const Matrix &v) { return oracle::dot(w, gcn_forward(x, g, theta, v)); };
            CHECK(oracle::relative_error(grads.dx, oracle::finite_difference(fx, x)) < 1e-4);
            CHECK(oracle::relative_error(grads.dtheta, oracle::finite_difference(ft, theta)) < 1e-4);
            CHECK(oracle::relative_error(grads.dbias, oracle::finite_difference(fb, bias)) < 1e-4);
        }
    }

    TEST_CASE("pooled sizes")
    {
        CHECK(pooled_size(3, 2.0 / 3.0) == 2);
        CHECK(pooled_size(10, 0.9) == 9);
        CHECK(pooled_size(1, 0.5) == 1);
        CHECK(pooled_size(512, 1.0) == 512);
        CHECK_THROWS_AS(pooled_size(5, 0.0), ParameterError);
        Architecture a;
        a.ratios = {0.9, 0.75, 0.5};
        CHECK(a.latent_vertices() == 173); // ceil(.5 * ceil(.75 * ceil(.9 * 512)))
    }

    TEST_CASE("top-k selection")
    {
        cloud::KnnGraph g(1, {{1}, {0, 2}, {1}});
        Matrix x{{2}, {0.5}, {1}};
        Matrix p{{1}};
        TopkResult r = topk_forward(x, g, p, 2.0 / 3.0);
        CHECK(r.kept == std::vector<std::size_t>{0, 2});
        CHECK(r.out(0, 0) == doctest::Approx(2 * std::tanh(2.0)));
        CHECK(r.graph.n_vertices() == 2);
        CHECK_FALSE(r.graph.adjacent(0, 1));

        TopkResult all = topk_forward(x, g, p, 1.0);
        CHECK(all.kept.size() == 3);
        CHECK_THROWS_AS(topk_forward(x, g, Matrix{{0}}, 0.5), ParameterError);
    }

    TEST_CASE("top-k gradients with fixed selection")
    {
        Rng rng(2);
        int checked = 0;
        for (int trial = 0; trial < 60 && checked < 25; ++trial)
        {
            const std::size_t n = 10, c = 4;
            auto g = random_graph(n, 3, rng);
            Matrix x = oracle::random_matrix(n, c, rng);
            Matrix p = oracle::random_matrix(1, c, rng);
            const double ratio = trial % 2 ? 0.5 : 1.0;
            TopkResult fwd = topk_forward(x, g, p, ratio);
            if (min_score_gap(fwd.scores) < 1e-3)
                continue;
            Matrix w = oracle::random_matrix(fwd.out.rows(), c, rng);
            TopkGrads grads = topk_backward(w, x, p, fwd);
            auto fx = [&](const Matrix &v) { return oracle::dot(w, topk_forward(v, g, p, ratio).out); };
            auto fp = [&](const Matrix &v) { return oracle::dot(w, topk_forward(x, g, v, ratio).out); };
            CHECK(oracle::relative_error(grads.dx, oracle::finite_difference(fx, x)) < 1e-4);
            CHECK(oracle::relative_error(grads.dp, oracle::finite_difference(fp, p)) < 1e-4);
            ++checked;
        }
        CHECK(checked >= 20);
    }

    TEST_CASE("power normalization")
    {
        Matrix z = power_normalize(Matrix{{3}, {4}}, 1.0);
        CHECK(z(0, 0) == doctest::Approx(3 * std::sqrt(2.0) / 5));
        CHECK(z(1, 0) == doctest::Approx(4 * std::sqrt(2.0) / 5));
        CHECK(oracle::dot(z, z) == doctest::Approx(2.0));
        CHECK(max_abs(power_normalize(z, 1.0) - z) < 1e-15);
        CHECK_THROWS_AS(power_normalize(Matrix(2, 2), 1.0), NumericalError);

        Rng rng(3);
        for (int trial = 0; trial < 20; ++trial)
        {
            Matrix raw = oracle::random_matrix(5, 3, rng);
            const double power = 0.5 + trial * 0.1;
            Matrix w = oracle::random_matrix(5, 3, rng);
            auto f = [&](const Matrix &v) { return oracle::dot(w, power_normalize(v, power)); };
            Matrix ana = power_normalize_backward(w, raw, power);
            CHECK(oracle::relative_error(ana, oracle::finite_difference(f, raw)) < 1e-4);
            Matrix zn = power_normalize(raw, power);
            CHECK(std::abs(oracle::dot(zn, zn) - 15 * power) < 1e-9);
        }
    }

    TEST_CASE("dense layer gradients")
    {
        Rng rng(4);
        for (int trial = 0; trial < 20; ++trial)
        {
            Matrix w = oracle::random_matrix(4, 6, rng);
            Matrix b = oracle::random_matrix(1, 4, rng);
            Matrix v = oracle::random_matrix(1, 6, rng);
            Matrix up = oracle::random_matrix(1, 4, rng);
            Matrix dw(4, 6), db(1, 4);
            Matrix dv = as_row(dense_backward(up.values(), w, v.values(), dw, db));
            auto fv = [&](const Matrix &x) { return oracle::dot(up, as_row(dense_forward(w, b, x.values()))); };
            auto fw = [&](const Matrix &x) { return oracle::dot(up, as_row(dense_forward(x, b, v.values()))); };
            auto fb = [&](const Matrix &x) { return oracle::dot(up, as_row(dense_forward(w, x, v.values()))); };
            CHECK(oracle::relative_error(dv, oracle::finite_difference(fv, v)) < 1e-4);
            CHECK(oracle::relative_error(dw, oracle::finite_difference(fw, w)) < 1e-4);
            CHECK(oracle::relative_error(db, oracle::finite_difference(fb, b)) < 1e-4);
        }
    }

    TEST_CASE("decoder range, zero weights and gradients")
    {
        Architecture a = tiny_arch();
        ModelParams zero = init_params(a, 1);
        for (Tensor2 *t : zero.tensors())
            t->value.fill(0.0);
        std::vector<double> z(a.latent_size(), 0.7);
        CHECK(max_abs(decode(z, zero)) == 0.0);

        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial)
        {
            ModelParams p = spread_params(a, rng);
            Matrix zin = oracle::random_matrix(1, a.latent_size(), rng, -3, 3);
            Matrix out = decode(zin.values(), p);
            CHECK(out.rows() == 8);
            CHECK(max_abs(out) < 1.0);

            Matrix w = oracle::random_matrix(8, 3, rng);
            DecoderCache cache;
            decode(zin.values(), p, &cache);
            p.zero_grad();
            Matrix dz = as_row(decode_backward(w, cache, p));
            auto fz = [&](const Matrix &x) { return oracle::dot(w, decode(x.values(), p)); };
            CHECK(oracle::relative_error(dz, oracle::finite_difference(fz, zin)) < 1e-4);

            // output layer weights: covers the tanh derivative
            Matrix &w3 = p.dense_weight[2].value;
            Matrix dw3 = p.dense_weight[2].grad;
            ModelParams probe = p;
            auto fw = [&](const Matrix &x)
            {
                probe.dense_weight[2].value = x;
                return oracle::dot(w, decode(zin.values(), probe));
            };
            CHECK(oracle::relative_error(dw3, oracle::finite_difference(fw, w3)) < 1e-4);
        }
        CHECK_THROWS_AS(decode(std::vector<double>(a.latent_size() + 1), zero), ParameterError);
    }

    TEST_CASE("encoder power constraint and latent shape")
    {
        Rng rng(6);
        Architecture a = tiny_arch();
        for (int trial = 0; trial < 10; ++trial)
        {
            auto pts = oracle::random_cloud(8, rng);
            auto g = cloud::build_knn_graph(pts, a.knn_k);
            ModelParams p = init_params(a, static_cast<std::uint64_t>(trial));
            LatentCode code = encode(pts.points(), g, p);
            CHECK(code.m() == a.latent_vertices());
            CHECK(code.L() == 3);
            CHECK(std::abs(oracle::dot(code.z, code.z) - static_cast<double>(code.m() * code.L())) < 1e-9);
        }
    }

    TEST_CASE("encoder Jacobian on an 8-point cloud")
    {
        Rng rng(7);
        Architecture a = tiny_arch();
        int checked = 0;
        for (int trial = 0; trial < 1000 && checked < 20; ++trial)
        {
            auto pts = oracle::random_cloud(8, rng);
            auto g = cloud::build_knn_graph(pts, a.knn_k);
            ModelParams p = spread_params(a, rng);
            EncoderCache cache;
            LatentCode code = encode(pts.points(), g, p, &cache);
            bool near_tie = false;
            for (const auto &s : cache.stages)
                near_tie = near_tie || min_score_gap(s.pool.scores) < 1e-3;
            if (near_tie)
                continue;
            const auto sel = selection(pts.points(), g, p);

            Matrix w = oracle::random_matrix(code.m(), code.L(), rng);
            p.zero_grad();
            Matrix ana = encode_backward(w, cache, p);
            bool stable = true;
            auto f = [&](const Matrix &x)
            {
                stable = stable && selection(x, g, p) == sel;
                return oracle::dot(w, encode(x, g, p).z);
            };
            Matrix num = oracle::finite_difference(f, pts.points());
            if (!stable)
                continue;
            CHECK(oracle::relative_error(ana, num) < 1e-4);
            ++checked;
        }
        CHECK(checked >= 20);
    }

    TEST_CASE("full chain gradient through the channel")
    {
        Rng rng(8);
        Architecture a = tiny_arch();
        int checked = 0;
        int instance = 0;
        for (auto eq : {channel::Equalization::Pre, channel::Equalization::Post})
            for (int trial = 0; trial < 1000 && checked < 12 * (eq == channel::Equalization::Pre ? 1 : 2); ++trial)
            {
                ++instance;
                TrainingSample s = prepare_sample(oracle::random_cloud(8, rng), a);
                ModelParams p = spread_params(a, rng);
                channel::ChannelConfig cfg;
                cfg.snr_db = 10;
                cfg.equalization = eq;
                cfg.precoding = trial % 2 == 0;
                auto real = channel::draw_realization(cfg, channel::symbols_for_reals(a.latent_size()),
                                                      static_cast<std::uint64_t>(instance));

                EncoderCache cache;
                LatentCode code = encode(s.target, s.graph, p, &cache);
                bool near_tie = false;
                for (const auto &st : cache.stages)
                    near_tie = near_tie || min_score_gap(st.pool.scores) < 1e-3;
                auto tx = channel::transmit(code.z.values(), cfg, real);
                Matrix recon = decode(tx.z_hat, p);
                auto terms = cloud::chamfer_terms(cloud::PointCloud(s.target), cloud::PointCloud(recon));
                if (near_tie || std::abs(terms.forward - terms.backward) < 1e-3)
                    continue;

                p.zero_grad();
                const double loss = sample_loss(s, p, cfg, real, true);
                CHECK(loss == doctest::Approx(terms.value()).epsilon(1e-12));
                const auto analytic = flat_grads(p);
                const auto base = flat_params(p);
                const auto sel = selection(s.target, s.graph, p);

                std::vector<double> numeric(base.size());
                bool stable = true;
                ModelParams probe = p;
                for (std::size_t k = 0; k < base.size(); ++k)
                {
                    set_param(probe, k, base[k] + 1e-5);
                    stable = stable && selection(s.target, s.graph, probe) == sel;
                    const double fp = sample_loss(s, probe, cfg, real);
                    set_param(probe, k, base[k] - 1e-5);
                    stable = stable && selection(s.target, s.graph, probe) == sel;
                    const double fm = sample_loss(s, probe, cfg, real);
                    set_param(probe, k, base[k]);
                    numeric[k] = (fp - fm) / 2e-5;
                }
                if (!stable)
                    continue;
                CHECK(oracle::relative_error(as_row(analytic), as_row(numeric)) < 1e-4);
                ++checked;
            }
        CHECK(checked >= 20);
    }

    TEST_CASE("adam")
    {
        ModelParams p = init_params(tiny_arch(), 3);
        auto tensors = p.tensors();
        AdamState st = make_adam_state(tensors);
        const auto before = flat_params(p);
        p.zero_grad();
        adam_step(tensors, st, {});
        CHECK(flat_params(p) == before);
        CHECK(st.step == 1);

        for (Tensor2 *t : tensors)
            t->grad.fill(0.3);
        AdamState s1 = make_adam_state(tensors);
        ModelParams q = p;
        auto qt = q.tensors();
        AdamState s2 = s1;
        AdamConfig cfg;
        adam_step(tensors, s1, cfg);
        adam_step(qt, s2, cfg);
        CHECK(flat_params(p) == flat_params(q));
        CHECK(s1 == s2);
        const auto after = flat_params(p);
        for (std::size_t k = 0; k < after.size(); ++k)
            CHECK(std::abs(before[k] - after[k]) == doctest::Approx(cfg.lr).epsilon(0.01));
    }

    TEST_CASE("training determinism, lr zero and resume")
    {
        Architecture a = tiny_arch();
        std::vector<cloud::PointCloud> clouds;
        Rng rng(9);
        for (int i = 0; i < 6; ++i)
            clouds.push_back(oracle::random_cloud(8, rng));
        TrainingConfig cfg;
        cfg.channel.mode = channel::FadingMode::Awgn;
        cfg.epochs = 4;
        cfg.batch_size = 4;
        cfg.seed = 21;

        TrainState s1 = make_train_state(a, 2), s2 = make_train_state(a, 2);
        auto h1 = train(clouds, s1, cfg);
        auto h2 = train(clouds, s2, cfg);
        REQUIRE(h1.size() == 4);
        for (std::size_t e = 0; e < 4; ++e)
            CHECK(h1[e].mean_loss == h2[e].mean_loss);
        CHECK(flat_params(s1.params) == flat_params(s2.params));

        TrainState frozen = make_train_state(a, 2);
        const auto init = flat_params(frozen.params);
        TrainingConfig zero = cfg;
        zero.adam.lr = 0.0;
        train(clouds, frozen, zero);
        CHECK(flat_params(frozen.params) == init);

        TrainState half = make_train_state(a, 2);
        TrainingConfig first = cfg;
        first.epochs = 2;
        train(clouds, half, first);
        std::stringstream buf;
        write_checkpoint(buf, half);
        TrainState resumed = read_checkpoint(buf);
        auto tail = train(clouds, resumed, cfg);
        REQUIRE(tail.size() == 2);
        CHECK(tail[1].mean_loss == h1[3].mean_loss);
        CHECK(flat_params(resumed.params) == flat_params(s1.params));
        CHECK(resumed.adam == s1.adam);
    }

    TEST_CASE("checkpoint round trip and corruption")
    {
        TrainState s = make_train_state(tiny_arch(), 4);
        s.epochs_done = 17;
        std::stringstream buf;
        write_checkpoint(buf, s);
        const std::string bytes = buf.str();
        CHECK(bytes.substr(0, 4) == "SPCM");

        std::stringstream in(bytes);
        TrainState back = read_checkpoint(in);
        CHECK(back.params.arch == s.params.arch);
        CHECK(back.epochs_done == 17);
        CHECK(flat_params(back.params) == flat_params(s.params));

        std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
        CHECK_THROWS_AS(read_checkpoint(truncated), FormatError);

        std::string wrong_version = bytes;
        wrong_version[4] = 9;
        std::stringstream wv(wrong_version);
        CHECK_THROWS_AS(read_checkpoint(wv), FormatError);

        std::stringstream trailing(bytes + "x");
        CHECK_THROWS_AS(read_checkpoint(trailing), FormatError);

        std::stringstream no_opt;
        write_checkpoint(no_opt, s, false);
        TrainState lean = read_checkpoint(no_opt);
        CHECK(flat_params(lean.params) == flat_params(s.params));

        auto path = std::filesystem::temp_directory_path() / "softpc_test_model.bin";
        save_model(s, path);
        CHECK(flat_params(load_model(path).params) == flat_params(s.params));
        std::filesystem::remove(path);
        CHECK_THROWS_AS(load_model(path), FormatError);
    }

    TEST_CASE("prepare_sample rejects a size mismatch")
    {
        Rng rng(10);
        CHECK_THROWS_AS(prepare_sample(oracle::random_cloud(9, rng), tiny_arch()), ParameterError);
    }
}
