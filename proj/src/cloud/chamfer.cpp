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

#include "softpc/cloud/chamfer.hpp"
#include "softpc/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace softpc::cloud
{
    namespace
    {
        struct Assignment
        {
            std::vector<std::size_t> s_to_hat; // nearest S_hat index per point of S
            std::vector<double> s_dist;
            std::vector<std::size_t> hat_to_s; // nearest S index per point of S_hat
            std::vector<double> hat_dist;
        };

        Assignment assign(const Matrix &a, const Matrix &b)
        {
            if (a.rows() == 0 || b.rows() == 0)
                throw ParameterError("chamfer: empty point cloud");
            const std::size_t na = a.rows(), nb = b.rows();
            constexpr double inf = std::numeric_limits<double>::infinity();
            Assignment out{std::vector<std::size_t>(na, 0), std::vector<double>(na, inf),
                           std::vector<std::size_t>(nb, 0), std::vector<double>(nb, inf)};
            for (std::size_t i = 0; i < na; ++i)
            {
                const double ax = a(i, 0), ay = a(i, 1), az = a(i, 2);
                for (std::size_t j = 0; j < nb; ++j)
                {
                    const double dx = ax - b(j, 0), dy = ay - b(j, 1), dz = az - b(j, 2);
                    const double d2 = dx * dx + dy * dy + dz * dz;
                    // strict comparisons keep the lowest index on ties
                    if (d2 < out.s_dist[i])
                    {
                        out.s_dist[i] = d2;
                        out.s_to_hat[i] = j;
                    }
                    if (d2 < out.hat_dist[j])
                    {
                        out.hat_dist[j] = d2;
                        out.hat_to_s[j] = i;
                    }
                }
            }
            for (auto &d : out.s_dist)
                d = std::sqrt(d);
            for (auto &d : out.hat_dist)
                d = std::sqrt(d);
            return out;
        }

        double mean(const std::vector<double> &v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / static_cast<double>(v.size());
        }

        // accumulate w * (q - p) / |q - p| into row `row` of g
        void add_direction(Matrix &g, std::size_t row, const Matrix &hat, std::size_t qi, const Matrix &src,
                           std::size_t pi, double dist, double w)
        {
            if (dist == 0.0)
                return;
            for (std::size_t c = 0; c < 3; ++c)
                g(row, c) += w * (hat(qi, c) - src(pi, c)) / dist;
        }
    }

    ChamferTerms chamfer_terms(const PointCloud &s, const PointCloud &s_hat)
    {
        const Assignment a = assign(s.points(), s_hat.points());
        return {mean(a.s_dist), mean(a.hat_dist)};
    }

    double chamfer_distance(const PointCloud &s, const PointCloud &s_hat)
    {
        return chamfer_terms(s, s_hat).value();
    }

    ChamferWithGradient chamfer_with_gradient(const PointCloud &s, const PointCloud &s_hat)
    {
        const Matrix &sp = s.points();
        const Matrix &hp = s_hat.points();
        const Assignment a = assign(sp, hp);
        const double fwd = mean(a.s_dist);
        const double bwd = mean(a.hat_dist);

        double w_fwd = 0.0, w_bwd = 0.0;
        if (fwd > bwd)
            w_fwd = 1.0;
        else if (bwd > fwd)
            w_bwd = 1.0;
        else
            w_fwd = w_bwd = 0.5;

        ChamferWithGradient out{fwd > bwd ? fwd : bwd, Matrix(hp.rows(), 3)};
        if (w_fwd > 0.0)
        {
            const double w = w_fwd / static_cast<double>(sp.rows());
            for (std::size_t i = 0; i < sp.rows(); ++i)
                add_direction(out.gradient, a.s_to_hat[i], hp, a.s_to_hat[i], sp, i, a.s_dist[i], w);
        }
        if (w_bwd > 0.0)
        {
            const double w = w_bwd / static_cast<double>(hp.rows());
            for (std::size_t j = 0; j < hp.rows(); ++j)
                add_direction(out.gradient, j, hp, j, sp, a.hat_to_s[j], a.hat_dist[j], w);
        }
        return out;
    }
}
