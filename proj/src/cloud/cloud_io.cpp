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

#include "softpc/cloud/cloud_io.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace softpc::cloud
{
    namespace
    {
        class LineReader
        {
        public:
            explicit LineReader(std::istream &in) : in_(in) {}

            bool next(std::string &line)
            {
                if (!std::getline(in_, line))
                    return false;
                ++line_no_;
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                return true;
            }
            std::size_t line_no() const noexcept { return line_no_; }

        private:
            std::istream &in_;
            std::size_t line_no_ = 0;
        };

        std::vector<std::string_view> split_ws(std::string_view s)
        {
            std::vector<std::string_view> out;
            std::size_t i = 0;
            while (i < s.size())
            {
                while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
                    ++i;
                std::size_t j = i;
                while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
                    ++j;
                if (j > i)
                    out.push_back(s.substr(i, j - i));
                i = j;
            }
            return out;
        }

        double parse_real(std::string_view tok, std::size_t line)
        {
            double v = 0.0;
            const char *first = tok.data();
            if (!tok.empty() && tok.front() == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
                throw ParseError("non-numeric value '" + std::string(tok) + "'", line);
            return v;
        }

        std::size_t parse_count(std::string_view tok, std::size_t line)
        {
            std::size_t v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError("invalid count '" + std::string(tok) + "'", line);
            return v;
        }

        bool blank_or_comment(std::string_view line)
        {
            auto toks = split_ws(line);
            return toks.empty() || toks.front().front() == '#';
        }

        PointCloud finish(std::vector<double> values, std::size_t line)
        {
            if (values.empty())
                throw ParseError("no vertices", line);
            const std::size_t n = values.size() / 3;
            return PointCloud(Matrix(n, 3, std::move(values)));
        }

        struct PlyElement
        {
            std::string name;
            std::size_t count = 0;
            std::vector<std::string> properties;
            bool has_list = false;
        };

        PointCloud read_ply(std::istream &in)
        {
            LineReader r(in);
            std::string line;
            if (!r.next(line) || split_ws(line) != std::vector<std::string_view>{"ply"})
                throw ParseError("missing 'ply' magic", std::max<std::size_t>(r.line_no(), 1));

            std::vector<PlyElement> elements;
            bool have_format = false, ended = false;
            while (r.next(line))
            {
                auto t = split_ws(line);
                if (t.empty() || t[0] == "comment" || t[0] == "obj_info")
                    continue;
                if (t[0] == "format")
                {
                    if (t.size() < 2 || t[1] != "ascii")
                        throw ParseError("unsupported PLY format (only ascii)", r.line_no());
                    have_format = true;
                }
                else if (t[0] == "element")
                {
                    if (t.size() != 3)
                        throw ParseError("malformed element line", r.line_no());
                    elements.push_back({std::string(t[1]), parse_count(t[2], r.line_no()), {}, false});
                }
                else if (t[0] == "property")
                {
                    if (elements.empty())
                        throw ParseError("property before any element", r.line_no());
                    if (t.size() >= 2 && t[1] == "list")
                    {
                        if (t.size() != 5)
                            throw ParseError("malformed list property", r.line_no());
                        elements.back().has_list = true;
                        elements.back().properties.emplace_back(t[4]);
                    }
                    else
                    {
                        if (t.size() != 3)
                            throw ParseError("malformed property line", r.line_no());
                        elements.back().properties.emplace_back(t[2]);
                    }
                }
                else if (t[0] == "end_header")
                {
                    ended = true;
                    break;
                }
                else
                    throw ParseError("unknown header keyword '" + std::string(t[0]) + "'", r.line_no());
            }
            if (!ended)
                throw ParseError("truncated header (no end_header)", r.line_no());
            if (!have_format)
                throw ParseError("missing format line", r.line_no());

            std::vector<double> values;
            bool saw_vertex = false;
            for (const auto &el : elements)
            {
                const bool is_vertex = el.name == "vertex";
                std::array<std::size_t, 3> pos{};
                if (is_vertex)
                {
                    if (el.has_list)
                        throw ParseError("list property on vertex element", r.line_no());
                    const char *names[3] = {"x", "y", "z"};
                    for (int c = 0; c < 3; ++c)
                    {
                        auto it = std::find(el.properties.begin(), el.properties.end(), names[c]);
                        if (it == el.properties.end())
                            throw ParseError(std::string("vertex element lacks property ") + names[c], r.line_no());
                        pos[c] = static_cast<std::size_t>(it - el.properties.begin());
                    }
                    values.reserve(el.count * 3);
                    saw_vertex = true;
                }
                for (std::size_t i = 0; i < el.count; ++i)
                {
                    if (!r.next(line))
                        throw ParseError("truncated file: expected " + std::to_string(el.count) + " " + el.name +
                                             " lines",
                                         r.line_no() + 1);
                    if (!is_vertex)
                        continue;
                    auto t = split_ws(line);
                    if (t.size() < el.properties.size())
                        throw ParseError("vertex line has too few values", r.line_no());
                    for (std::size_t c = 0; c < 3; ++c)
                        values.push_back(parse_real(t[pos[c]], r.line_no()));
                }
            }
            if (!saw_vertex)
                throw ParseError("no vertex element", r.line_no());
            return finish(std::move(values), r.line_no());
        }

        PointCloud read_off(std::istream &in)
        {
            LineReader r(in);
            std::string line;
            std::vector<std::string_view> t;
            // magic, possibly followed by the counts on the same line
            while (r.next(line))
            {
                if (blank_or_comment(line))
                    continue;
                t = split_ws(line);
                break;
            }
            if (t.empty() || t[0] != "OFF")
                throw ParseError("missing 'OFF' magic", std::max<std::size_t>(r.line_no(), 1));
            t.erase(t.begin());
            std::string counts_line;
            if (t.empty())
            {
                while (r.next(counts_line))
                    if (!blank_or_comment(counts_line))
                        break;
                t = split_ws(counts_line);
            }
            if (t.size() < 1)
                throw ParseError("missing vertex/face counts", r.line_no());
            const std::size_t nv = parse_count(t[0], r.line_no());

            std::vector<double> values;
            values.reserve(nv * 3);
            while (values.size() < nv * 3)
            {
                if (!r.next(line))
                    throw ParseError("truncated file: expected " + std::to_string(nv) + " vertices", r.line_no() + 1);
                if (blank_or_comment(line))
                    continue;
                auto v = split_ws(line);
                if (v.size() < 3)
                    throw ParseError("vertex line has fewer than 3 values", r.line_no());
                for (std::size_t c = 0; c < 3; ++c)
                    values.push_back(parse_real(v[c], r.line_no()));
            }
            return finish(std::move(values), r.line_no());
        }

        PointCloud read_xyz(std::istream &in)
        {
            LineReader r(in);
            std::string line;
            std::vector<double> values;
            while (r.next(line))
            {
                if (blank_or_comment(line))
                    continue;
                auto v = split_ws(line);
                if (v.size() < 3)
                    throw ParseError("expected at least 3 values", r.line_no());
                for (std::size_t c = 0; c < 3; ++c)
                    values.push_back(parse_real(v[c], r.line_no()));
            }
            return finish(std::move(values), r.line_no());
        }
    }

    std::optional<CloudFormat> format_from_extension(const std::filesystem::path &path)
    {
        std::string ext = path.extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c)
                       { return static_cast<char>(std::tolower(c)); });
        if (ext == ".ply")
            return CloudFormat::Ply;
        if (ext == ".off")
            return CloudFormat::Off;
        if (ext == ".xyz")
            return CloudFormat::Xyz;
        return std::nullopt;
    }

    std::string_view format_name(CloudFormat format) noexcept
    {
        switch (format)
        {
        case CloudFormat::Ply:
            return "ply";
        case CloudFormat::Off:
            return "off";
        case CloudFormat::Xyz:
            return "xyz";
        }
        return "?";
    }

    PointCloud read_cloud(std::istream &in, CloudFormat format)
    {
        switch (format)
        {
        case CloudFormat::Ply:
            return read_ply(in);
        case CloudFormat::Off:
            return read_off(in);
        case CloudFormat::Xyz:
            return read_xyz(in);
        }
        throw ParameterError("read_cloud: unknown format");
    }

    void write_cloud(std::ostream &out, const PointCloud &cloud, CloudFormat format)
    {
        out << std::setprecision(9);
        switch (format)
        {
        case CloudFormat::Ply:
            out << "ply\nformat ascii 1.0\n";
            if (!cloud.id().empty())
                out << "comment id " << cloud.id() << '\n';
            out << "element vertex " << cloud.size() << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
            break;
        case CloudFormat::Off:
            out << "OFF\n"
                << cloud.size() << " 0 0\n";
            break;
        case CloudFormat::Xyz:
            break;
        }
        for (std::size_t i = 0; i < cloud.size(); ++i)
        {
            const Point3 p = cloud.point(i);
            out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
        }
    }

    PointCloud load_cloud(const std::filesystem::path &path, CloudFormat format)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open " + path.string(), 0);
        try
        {
            PointCloud c = read_cloud(in, format);
            c.set_id(path.stem().string());
            return c;
        }
        catch (const ParseError &e)
        {
            throw ParseError(e.message(), e.line(), path.string());
        }
    }

    PointCloud load_cloud(const std::filesystem::path &path)
    {
        auto fmt = format_from_extension(path);
        if (!fmt)
            throw ParameterError("load_cloud: unknown extension for " + path.string());
        return load_cloud(path, *fmt);
    }

    void save_cloud(const PointCloud &cloud, const std::filesystem::path &path, CloudFormat format)
    {
        std::ofstream out(path);
        if (!out)
            throw ParameterError("save_cloud: cannot open " + path.string() + " for writing");
        write_cloud(out, cloud, format);
        if (!out)
            throw ParameterError("save_cloud: write failed for " + path.string());
    }

    void save_cloud(const PointCloud &cloud, const std::filesystem::path &path)
    {
        auto fmt = format_from_extension(path);
        if (!fmt)
            throw ParameterError("save_cloud: unknown extension for " + path.string());
        save_cloud(cloud, path, *fmt);
    }
}
