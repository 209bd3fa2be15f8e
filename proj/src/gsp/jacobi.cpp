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

#include "softpc/gsp/jacobi.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace softpc::gsp
{
    void canonicalize_signs(Matrix &v)
    {
        for (std::size_t j = 0; j < v.cols(); ++j)
        {
            for (std::size_t i = 0; i < v.rows(); ++i)
            {
                if (std::abs(v(i, j)) <= 1e-9)
                    continue;
                if (v(i, j) < 0.0)
                    for (std::size_t r = 0; r < v.rows(); ++r)
                        v(r, j) = -v(r, j);
                break;
            }
        }
    }

    EigenDecomposition jacobi_eigen(const Matrix &sym, double tol)
    {
        const std::size_t n = sym.rows();
        if (sym.cols() != n)
            throw ParameterError("jacobi_eigen: matrix is not square");
        if (n == 0)
            throw ParameterError("jacobi_eigen: empty matrix");
        if (n > kMaxJacobiOrder)
            throw ParameterError("jacobi_eigen: order " + std::to_string(n) + " exceeds 1024");
        if (!all_finite(sym))
            throw ParameterError("jacobi_eigen: non-finite entry");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(sym(i, j) - sym(j, i)) > 1e-9)
                    throw ParameterError("jacobi_eigen: matrix is not symmetric");

        Matrix a = sym;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                a(i, j) = a(j, i) = 0.5 * (sym(i, j) + sym(j, i));
        Matrix v = Matrix::identity(n);

        if (tol <= 0.0)
            tol = std::max(1e-14 * frobenius_norm(a), 1e-300);

        auto max_off = [&]
        {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    m = std::max(m, std::abs(a(i, j)));
            return m;
        };

        int sweep = 0;
        for (; max_off() >= tol; ++sweep)
        {
            if (sweep >= kMaxJacobiSweeps)
                throw NumericalError("jacobi_eigen: no convergence after 100 sweeps");
            for (std::size_t p = 0; p + 1 < n; ++p)
            {
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    const double apq = a(p, q);
                    if (std::abs(apq) < 0.1 * tol)
                        continue;
                    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                    double t;
                    if (std::abs(theta) > 1e150)
                        t = 0.5 / theta;
                    else
                        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    a(p, p) -= t * apq;
                    a(q, q) += t * apq;
                    a(p, q) = a(q, p) = 0.0;
                    auto row_p = a.row(p);
                    auto row_q = a.row(q);
                    for (std::size_t r = 0; r < n; ++r)
                    {
                        if (r == p || r == q)
                            continue;
                        const double arp = row_p[r], arq = row_q[r];
                        row_p[r] = c * arp - s * arq;
                        row_q[r] = s * arp + c * arq;
                        a(r, p) = row_p[r];
                        a(r, q) = row_q[r];
                    }
                    for (std::size_t r = 0; r < n; ++r)
                    {
                        const double vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = c * vrp - s * vrq;
                        v(r, q) = s * vrp + c * vrq;
                    }
                }
            }
        }

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y)
                         { return a(x, x) < a(y, y); });

        EigenDecomposition out;
        out.sweeps = sweep;
        out.eigenvalues.resize(n);
        out.eigenvectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            out.eigenvalues[j] = a(order[j], order[j]);
            for (std::size_t r = 0; r < n; ++r)
                out.eigenvectors(r, j) = v(r, order[j]);
        }
        canonicalize_signs(out.eigenvectors);
        return out;
    }
}
