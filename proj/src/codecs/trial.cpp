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

#include "softpc/codecs/trial.hpp"
#include "softpc/cloud/chamfer.hpp"
#include "softpc/codecs/gnn_codec.hpp"
#include "softpc/codecs/holocast.hpp"
#include "softpc/codecs/softcast.hpp"
#include "softpc/error.hpp"
#include "softpc/rng.hpp"

#include <cmath>
#include <sstream>

namespace softpc::codecs
{
    namespace
    {
        void fill_stats(TransmissionReport &r, const std::vector<double> &values)
        {
            double sum = 0.0;
            for (double v : values)
                sum += v;
            const double mean = sum / static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values)
                var += (v - mean) * (v - mean);
            r.chamfer_mean = mean;
            r.chamfer_std = std::sqrt(var / static_cast<double>(values.size()));
            r.samples = values.size();
        }

        TransmissionReport blank(const Codec &codec, const channel::ChannelConfig &cfg, std::uint64_t seed)
        {
            TransmissionReport r;
            r.codec = codec.name();
            r.snr_db = cfg.snr_db;
            r.equalization = cfg.equalization;
            r.precoding = cfg.precoding;
            r.seed = seed;
            return r;
        }

        std::vector<double> trial_values(const Codec &codec, const cloud::PointCloud &cloud,
                                         const channel::ChannelConfig &cfg, std::size_t n_realizations,
                                         std::uint64_t seed, channel::OverheadReport &overhead, std::size_t &outages)
        {
            if (n_realizations < 1)
                throw ParameterError("run_codec_trial: need at least one realization");
            const CodecOutput sent = codec.encode(cloud);
            overhead = sent.overhead();
            std::vector<double> values;
            values.reserve(n_realizations);
            for (std::size_t t = 0; t < n_realizations; ++t)
            {
                const auto received = send_over_channel(sent, cfg, derive_seed(seed, {t}), &outages);
                values.push_back(cloud::chamfer_distance(cloud, codec.decode(sent, received)));
            }
            return values;
        }
    }

    std::string report_csv_header()
    {
        return "codec,snr_db,equalization,precoding,data_symbols,metadata_symbols,total_symbols,chamfer_mean,"
               "chamfer_std,seed";
    }

    std::string to_csv(const TransmissionReport &r)
    {
        std::ostringstream ss;
        ss.precision(9);
        ss << r.codec << ',' << r.snr_db << ',' << channel::to_string(r.equalization) << ','
           << (r.precoding ? "on" : "off") << ',' << channel::to_csv(r.overhead) << ',' << r.chamfer_mean << ','
           << r.chamfer_std << ',' << r.seed;
        return ss.str();
    }

    TransmissionReport run_codec_trial(const Codec &codec, const cloud::PointCloud &cloud,
                                       const channel::ChannelConfig &cfg, std::size_t n_realizations,
                                       std::uint64_t seed)
    {
        TransmissionReport r = blank(codec, cfg, seed);
        fill_stats(r, trial_values(codec, cloud, cfg, n_realizations, seed, r.overhead, r.outages));
        return r;
    }

    TransmissionReport evaluate_codec(const Codec &codec, const std::vector<cloud::PointCloud> &clouds,
                                      const channel::ChannelConfig &cfg, std::size_t n_realizations,
                                      std::uint64_t seed)
    {
        return evaluate_codec_grid(codec, clouds, {cfg}, n_realizations, seed).front();
    }

    std::vector<TransmissionReport> evaluate_codec_grid(const Codec &codec, const std::vector<cloud::PointCloud> &clouds,
                                                        const std::vector<channel::ChannelConfig> &cfgs,
                                                        std::size_t n_realizations, std::uint64_t seed)
    {
        if (clouds.empty())
            throw ParameterError("evaluate_codec: no clouds");
        if (n_realizations < 1)
            throw ParameterError("evaluate_codec: need at least one realization");
        std::vector<TransmissionReport> reports;
        std::vector<std::vector<double>> values(cfgs.size());
        for (const auto &cfg : cfgs)
            reports.push_back(blank(codec, cfg, seed));

        double data = 0.0, meta = 0.0;
        for (std::size_t i = 0; i < clouds.size(); ++i)
        {
            const CodecOutput sent = codec.encode(clouds[i]);
            const channel::OverheadReport o = sent.overhead();
            data += static_cast<double>(o.data_symbols);
            meta += static_cast<double>(o.metadata_symbols);
            const std::uint64_t cloud_seed = derive_seed(seed, {i});
            for (std::size_t c = 0; c < cfgs.size(); ++c)
                for (std::size_t t = 0; t < n_realizations; ++t)
                {
                    const auto received = send_over_channel(sent, cfgs[c], derive_seed(cloud_seed, {t}),
                                                            &reports[c].outages);
                    values[c].push_back(cloud::chamfer_distance(clouds[i], codec.decode(sent, received)));
                }
        }
        const double n = static_cast<double>(clouds.size());
        for (std::size_t c = 0; c < cfgs.size(); ++c)
        {
            auto &r = reports[c];
            r.overhead.data_symbols = static_cast<std::uint64_t>(std::llround(data / n));
            r.overhead.metadata_symbols = static_cast<std::uint64_t>(std::llround(meta / n));
            r.overhead.total_symbols = r.overhead.data_symbols + r.overhead.metadata_symbols;
            fill_stats(r, values[c]);
        }
        return reports;
    }

    TransmissionReport gnn_codec(const cloud::PointCloud &cloud, std::shared_ptr<const neural::ModelParams> model,
                                 const channel::ChannelConfig &cfg, std::uint64_t seed)
    {
        return run_codec_trial(GnnCodec(std::move(model)), cloud, cfg, 1, seed);
    }

    TransmissionReport holocast_codec(const cloud::PointCloud &cloud, std::size_t block_size,
                                      const channel::ChannelConfig &cfg, std::optional<unsigned> givens_bits,
                                      std::uint64_t seed, std::size_t knn_k)
    {
        return run_codec_trial(HoloCastCodec(block_size, knn_k, givens_bits), cloud, cfg, 1, seed);
    }

    TransmissionReport softcast_codec(const cloud::PointCloud &cloud, std::size_t symbol_budget,
                                      const channel::ChannelConfig &cfg, std::uint64_t seed)
    {
        return run_codec_trial(SoftCastCodec(symbol_budget), cloud, cfg, 1, seed);
    }
}
