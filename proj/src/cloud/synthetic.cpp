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

#include "softpc/cloud/synthetic.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace softpc::cloud
{
    namespace
    {
        using std::numbers::pi;

        double uniform(Rng &rng, double lo, double hi)
        {
            return std::uniform_real_distribution<double>(lo, hi)(rng);
        }

        void put(Matrix &m, std::size_t row, double x, double y, double z)
        {
            m(row, 0) = x;
            m(row, 1) = y;
            m(row, 2) = z;
        }

        Matrix sample_sphere(std::size_t n, Rng &rng)
        {
            std::normal_distribution<double> g(0.0, 1.0);
            Matrix m(n, 3);
            for (std::size_t i = 0; i < n; ++i)
            {
                double x, y, z, r;
                do
                {
                    x = g(rng);
                    y = g(rng);
                    z = g(rng);
                    r = std::sqrt(x * x + y * y + z * z);
                } while (r < 1e-12);
                put(m, i, x / r, y / r, z / r);
            }
            return m;
        }

        Matrix sample_box_edges(std::size_t n, Rng &rng)
        {
            const double hx = uniform(rng, 0.4, 1.0), hy = uniform(rng, 0.4, 1.0), hz = uniform(rng, 0.4, 1.0);
            const double lengths[3] = {2 * hx, 2 * hy, 2 * hz};
            const double total = 4 * (lengths[0] + lengths[1] + lengths[2]);
            Matrix m(n, 3);
            for (std::size_t i = 0; i < n; ++i)
            {
                double u = uniform(rng, 0.0, total);
                int axis = 0;
                while (axis < 2 && u >= 4 * lengths[axis])
                {
                    u -= 4 * lengths[axis];
                    ++axis;
                }
                const int edge = std::min(3, static_cast<int>(u / lengths[axis]));
                const double t = u - edge * lengths[axis] - lengths[axis] / 2;
                const double s1 = (edge & 1) ? 1.0 : -1.0;
                const double s2 = (edge & 2) ? 1.0 : -1.0;
                if (axis == 0)
                    put(m, i, t, s1 * hy, s2 * hz);
                else if (axis == 1)
                    put(m, i, s1 * hx, t, s2 * hz);
                else
                    put(m, i, s1 * hx, s2 * hy, t);
            }
            return m;
        }

        // Tapered, swept plate in the plane spanned by x and `span_axis` (1 = y, 2 = z).
        void sample_plate(Matrix &m, std::size_t begin, std::size_t end, Rng &rng, double x_root, double root_chord,
                          double taper, double span, double sweep, int span_axis, bool mirrored, double offset,
                          double thickness)
        {
            for (std::size_t i = begin; i < end; ++i)
            {
                // area-weighted span position for a linear taper
                const double a = 1.0, b = taper;
                const double u = uniform(rng, 0.0, 1.0);
                double s;
                if (std::abs(a - b) < 1e-9)
                    s = u;
                else
                    s = (a - std::sqrt(a * a - u * (a * a - b * b))) / (a - b);
                const double chord = root_chord * (1.0 - s * (1.0 - taper));
                const double lead = x_root - s * span * std::tan(sweep);
                const double x = lead - uniform(rng, 0.0, chord);
                double w = s * span;
                if (mirrored && uniform(rng, 0.0, 1.0) < 0.5)
                    w = -w;
                const double thick = uniform(rng, -thickness, thickness);
                if (span_axis == 1)
                    put(m, i, x, w, offset + thick);
                else
                    put(m, i, x, thick, offset + w);
            }
        }

        Matrix sample_airplane(std::size_t n, Rng &rng)
        {
            const double length = uniform(rng, 1.6, 2.0);
            const double radius = uniform(rng, 0.08, 0.12);
            const double span = uniform(rng, 0.8, 1.1); // half span
            const double root_chord = uniform(rng, 0.35, 0.5);
            const double sweep = uniform(rng, 10.0, 35.0) * pi / 180.0;
            const double wing_x = uniform(rng, 0.05, 0.25);
            const double tail_x = -length / 2 + uniform(rng, 0.25, 0.35);
            const double stab_span = uniform(rng, 0.25, 0.35);
            const double fin_height = uniform(rng, 0.25, 0.35);

            const std::size_t n_fuse = n * 35 / 100;
            const std::size_t n_stab = n * 12 / 100;
            const std::size_t n_fin = n * 13 / 100;
            const std::size_t n_wing = n - n_fuse - n_stab - n_fin;

            Matrix m(n, 3);
            std::size_t row = 0;
            const double half = length / 2;
            for (; row < n_fuse; ++row)
            {
                const double x = uniform(rng, -half, half);
                const double t = x / half;
                const double r = radius * std::sqrt(std::max(0.0, 1.0 - t * t * t * t));
                const double phi = uniform(rng, 0.0, 2 * pi);
                put(m, row, x, r * std::cos(phi), r * std::sin(phi));
            }
            sample_plate(m, row, row + n_wing, rng, wing_x + root_chord / 2, root_chord, 0.4, span, sweep, 1, true,
                         -0.3 * radius, 0.01);
            row += n_wing;
            sample_plate(m, row, row + n_stab, rng, tail_x, 0.6 * root_chord, 0.5, stab_span, sweep, 1, true, 0.0,
                         0.008);
            row += n_stab;
            sample_plate(m, row, row + n_fin, rng, tail_x, 0.7 * root_chord, 0.5, fin_height, sweep * 1.3, 2, false,
                         radius * 0.8, 0.008);
            return m;
        }
    }

    const std::vector<std::string> &synthetic_families()
    {
        static const std::vector<std::string> names{"sphere", "airplane", "box_edges"};
        return names;
    }

    Matrix sample_shape(const std::string &family, std::size_t n_points, Rng &rng)
    {
        if (family == "sphere")
            return sample_sphere(n_points, rng);
        if (family == "airplane")
            return sample_airplane(n_points, rng);
        if (family == "box_edges")
            return sample_box_edges(n_points, rng);
        throw ParameterError("unknown synthetic shape family '" + family + "'");
    }

    Matrix apply_pose_jitter(const Matrix &points, Rng &rng)
    {
        const double yaw = uniform(rng, -15.0, 15.0) * pi / 180.0;
        const double pitch = uniform(rng, -5.0, 5.0) * pi / 180.0;
        const double roll = uniform(rng, -5.0, 5.0) * pi / 180.0;
        const double scale = uniform(rng, 0.85, 1.15);
        const double t[3] = {uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1)};

        const double cy = std::cos(yaw), sy = std::sin(yaw);
        const double cp = std::cos(pitch), sp = std::sin(pitch);
        const double cr = std::cos(roll), sr = std::sin(roll);
        // R = Rz(yaw) * Ry(pitch) * Rx(roll)
        const double r[3][3] = {{cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr},
                                {sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr},
                                {-sp, cp * sr, cp * cr}};
        Matrix out(points.rows(), 3);
        for (std::size_t i = 0; i < points.rows(); ++i)
            for (int a = 0; a < 3; ++a)
                out(i, a) = scale * (r[a][0] * points(i, 0) + r[a][1] * points(i, 1) + r[a][2] * points(i, 2)) + t[a];
        return out;
    }

    std::vector<PointCloud> generate_synthetic_dataset(const SyntheticSpec &spec)
    {
        const auto &families = synthetic_families();
        if (std::find(families.begin(), families.end(), spec.family) == families.end())
            throw ParameterError("unknown synthetic shape family '" + spec.family + "'");
        if (spec.count < 1)
            throw ParameterError("generate_synthetic_dataset: count must be >= 1");
        if (spec.points_per_cloud < 8)
            throw ParameterError("generate_synthetic_dataset: points_per_cloud must be >= 8");

        std::vector<PointCloud> out;
        out.reserve(spec.count);
        for (std::size_t i = 0; i < spec.count; ++i)
        {
            Rng rng(derive_seed(spec.seed, {i}));
            Matrix pts = sample_shape(spec.family, spec.points_per_cloud, rng);
            if (spec.pose_jitter)
                pts = apply_pose_jitter(pts, rng);
            char id[64];
            std::snprintf(id, sizeof id, "%s_%04zu", spec.family.c_str(), i);
            out.emplace_back(std::move(pts), id);
        }
        return out;
    }
}
