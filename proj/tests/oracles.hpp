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

// Independent reference implementations used only by the tests.

#pragma once

#include "softpc/cloud/point_cloud.hpp"
#include "softpc/matrix.hpp"
#include "softpc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace oracle
{
    using softpc::Matrix;
    using softpc::Rng;

    inline Matrix random_matrix(std::size_t r, std::size_t c, Rng &rng, double lo = -1.0, double hi = 1.0)
    {
        std::uniform_real_distribution<double> u(lo, hi);
        Matrix m(r, c);
        for (double &v : m.values())
            v = u(rng);
        return m;
    }

    inline softpc::cloud::PointCloud random_cloud(std::size_t n, Rng &rng, double extent = 1.0)
    {
        return softpc::cloud::PointCloud(random_matrix(n, 3, rng, -extent, extent));
    }

    inline Matrix random_symmetric(std::size_t n, Rng &rng)
    {
        Matrix a = random_matrix(n, n, rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                a(i, j) = a(j, i);
        return a;
    }

    /// Orthogonal matrix from modified Gram-Schmidt on a random square matrix.
    inline Matrix random_orthogonal(std::size_t n, Rng &rng)
    {
        Matrix a = random_matrix(n, n, rng);
        Matrix q(n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = a(i, j);
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k)
                {
                    double d = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        d += q(i, k) * v[i];
                    for (std::size_t i = 0; i < n; ++i)
                        v[i] -= d * q(i, k);
                }
            double norm = 0.0;
            for (double x : v)
                norm += x * x;
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i)
                q(i, j) = v[i] / norm;
        }
        return q;
    }

    /// Augmented Chamfer distance by direct double loops.
    inline double brute_chamfer(const Matrix &s, const Matrix &t)
    {
        auto dist = [](const Matrix &a, std::size_t i, const Matrix &b, std::size_t j)
        {
            double d = 0.0;
            for (std::size_t c = 0; c < 3; ++c)
                d += (a(i, c) - b(j, c)) * (a(i, c) - b(j, c));
            return std::sqrt(d);
        };
        double fwd = 0.0;
        for (std::size_t i = 0; i < s.rows(); ++i)
        {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < t.rows(); ++j)
                best = std::min(best, dist(s, i, t, j));
            fwd += best;
        }
        double bwd = 0.0;
        for (std::size_t j = 0; j < t.rows(); ++j)
        {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s.rows(); ++i)
                best = std::min(best, dist(s, i, t, j));
            bwd += best;
        }
        return std::max(fwd / static_cast<double>(s.rows()), bwd / static_cast<double>(t.rows()));
    }

    /// Exhaustive k-nearest sets (ties to the lower index), OR-symmetrized, as an edge set.
    inline std::set<std::pair<std::size_t, std::size_t>> brute_knn_edges(const Matrix &p, std::size_t k)
    {
        std::set<std::pair<std::size_t, std::size_t>> edges;
        const std::size_t n = p.rows();
        for (std::size_t i = 0; i < n; ++i)
        {
            std::vector<std::pair<double, std::size_t>> all;
            for (std::size_t j = 0; j < n; ++j)
            {
                if (j == i)
                    continue;
                double d = 0.0;
                for (std::size_t c = 0; c < 3; ++c)
                    d += (p(i, c) - p(j, c)) * (p(i, c) - p(j, c));
                all.emplace_back(d, j);
            }
            std::sort(all.begin(), all.end());
            for (std::size_t t = 0; t < k; ++t)
            {
                const std::size_t j = all[t].second;
                edges.insert({std::min(i, j), std::max(i, j)});
            }
        }
        return edges;
    }

    /// Central differences of a scalar function over every entry of x.
    inline Matrix finite_difference(const std::function<double(const Matrix &)> &f, const Matrix &x,
                                    double step = 1e-5)
    {
        Matrix g(x.rows(), x.cols());
        Matrix probe = x;
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            const double orig = probe.values()[k];
            probe.values()[k] = orig + step;
            const double fp = f(probe);
            probe.values()[k] = orig - step;
            const double fm = f(probe);
            probe.values()[k] = orig;
            g.values()[k] = (fp - fm) / (2 * step);
        }
        return g;
    }

    /// ||a - b|| / max(||b||, floor).
    inline double relative_error(const Matrix &analytic, const Matrix &numeric, double floor = 1e-10)
    {
        return softpc::frobenius_norm(analytic - numeric) / std::max(softpc::frobenius_norm(numeric), floor);
    }

    /// Random linear functional <w, .> used to turn a matrix-valued layer into a scalar loss.
    inline double dot(const Matrix &a, const Matrix &b)
    {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            s += a.values()[k] * b.values()[k];
        return s;
    }
}
