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

#include "softpc/neural/checkpoint.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace softpc::neural
{
    namespace
    {
        constexpr char kMagic[4] = {'S', 'P', 'C', 'M'};
        constexpr std::uint64_t kMaxTensorElements = std::uint64_t{1} << 32;

        template <typename T>
        void put(std::ostream &out, T v)
        {
            static_assert(std::is_trivially_copyable_v<T>);
            unsigned char bytes[sizeof(T)];
            std::memcpy(bytes, &v, sizeof(T));
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(bytes, bytes + sizeof(T));
            out.write(reinterpret_cast<const char *>(bytes), sizeof(T));
        }

        template <typename T>
        T get(std::istream &in)
        {
            unsigned char bytes[sizeof(T)];
            if (!in.read(reinterpret_cast<char *>(bytes), sizeof(T)))
                throw FormatError("checkpoint: truncated file");
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(bytes, bytes + sizeof(T));
            T v;
            std::memcpy(&v, bytes, sizeof(T));
            return v;
        }

        void put_matrix(std::ostream &out, const Matrix &m)
        {
            put<std::uint64_t>(out, m.rows());
            put<std::uint64_t>(out, m.cols());
            for (double v : m.values())
                put<double>(out, v);
        }

        Matrix get_matrix(std::istream &in, const Matrix &expected_shape)
        {
            const auto rows = get<std::uint64_t>(in);
            const auto cols = get<std::uint64_t>(in);
            if (rows != expected_shape.rows() || cols != expected_shape.cols())
                throw FormatError("checkpoint: tensor shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                  " does not match the architecture");
            if (rows * cols > kMaxTensorElements)
                throw FormatError("checkpoint: tensor too large");
            std::vector<double> values(rows * cols);
            for (double &v : values)
                v = get<double>(in);
            return Matrix(rows, cols, std::move(values));
        }
    }

    void write_checkpoint(std::ostream &out, const TrainState &state, bool with_optimizer)
    {
        const Architecture &a = state.params.arch;
        out.write(kMagic, 4);
        put<std::uint32_t>(out, kCheckpointVersion);
        put<std::uint64_t>(out, a.n_points);
        put<std::uint64_t>(out, a.knn_k);
        for (auto c : a.channels)
            put<std::uint64_t>(out, c);
        for (double r : a.ratios)
            put<double>(out, r);
        put<std::uint64_t>(out, a.decoder_hidden);
        put<double>(out, a.leaky_slope);
        put<double>(out, a.avg_power);
        put<std::uint64_t>(out, state.epochs_done);

        const auto tensors = state.params.tensors();
        put<std::uint32_t>(out, static_cast<std::uint32_t>(tensors.size()));
        for (const Tensor2 *t : tensors)
            put_matrix(out, t->value);

        const bool opt = with_optimizer && state.adam.m.size() == tensors.size();
        put<std::uint8_t>(out, opt ? 1 : 0);
        if (opt)
        {
            put<std::uint64_t>(out, state.adam.step);
            for (const Matrix &m : state.adam.m)
                put_matrix(out, m);
            for (const Matrix &v : state.adam.v)
                put_matrix(out, v);
        }
    }

    TrainState read_checkpoint(std::istream &in)
    {
        char magic[4];
        if (!in.read(magic, 4))
            throw FormatError("checkpoint: truncated file");
        if (std::memcmp(magic, kMagic, 4) != 0)
            throw FormatError("checkpoint: bad magic (not a model file)");
        const auto version = get<std::uint32_t>(in);
        if (version != kCheckpointVersion)
            throw FormatError("checkpoint: unsupported version " + std::to_string(version) + " (expected " +
                              std::to_string(kCheckpointVersion) + ")");

        Architecture a;
        a.n_points = get<std::uint64_t>(in);
        a.knn_k = get<std::uint64_t>(in);
        for (auto &c : a.channels)
            c = get<std::uint64_t>(in);
        for (double &r : a.ratios)
            r = get<double>(in);
        a.decoder_hidden = get<std::uint64_t>(in);
        a.leaky_slope = get<double>(in);
        a.avg_power = get<double>(in);
        const auto epochs_done = get<std::uint64_t>(in);
        try
        {
            a.validate();
        }
        catch (const ParameterError &e)
        {
            throw FormatError(std::string("checkpoint: invalid architecture: ") + e.what());
        }
        if (a.n_points > (std::uint64_t{1} << 24) || a.decoder_hidden > (std::uint64_t{1} << 20))
            throw FormatError("checkpoint: implausible architecture");

        // shapes come from a zero-initialized model of the same architecture
        TrainState state = make_train_state(a, 0);
        state.epochs_done = epochs_done;
        auto tensors = state.params.tensors();
        const auto count = get<std::uint32_t>(in);
        if (count != tensors.size())
            throw FormatError("checkpoint: expected " + std::to_string(tensors.size()) + " tensors, found " +
                              std::to_string(count));
        for (Tensor2 *t : tensors)
        {
            t->value = get_matrix(in, t->value);
            t->zero_grad();
        }

        const auto opt = get<std::uint8_t>(in);
        if (opt > 1)
            throw FormatError("checkpoint: bad optimizer flag");
        if (opt == 1)
        {
            state.adam.step = get<std::uint64_t>(in);
            for (std::size_t k = 0; k < tensors.size(); ++k)
                state.adam.m[k] = get_matrix(in, tensors[k]->value);
            for (std::size_t k = 0; k < tensors.size(); ++k)
                state.adam.v[k] = get_matrix(in, tensors[k]->value);
        }
        if (in.peek() != std::char_traits<char>::eof())
            throw FormatError("checkpoint: trailing bytes after optimizer state");
        return state;
    }

    void save_model(const TrainState &state, const std::filesystem::path &path, bool with_optimizer)
    {
        // write to a sibling temp file, then rename, so readers never see half a checkpoint
        std::filesystem::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw ParameterError("save_model: cannot open " + tmp.string());
            write_checkpoint(out, state, with_optimizer);
            if (!out)
                throw ParameterError("save_model: write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    TrainState load_model(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw FormatError("load_model: cannot open " + path.string());
        try
        {
            return read_checkpoint(in);
        }
        catch (const FormatError &e)
        {
            throw FormatError(path.string() + ": " + e.what());
        }
    }
}
