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

#include "softpc/gsp/givens.hpp"
#include "softpc/error.hpp"

#include <cmath>
#include <numbers>

namespace softpc::gsp
{
    namespace
    {
        using std::numbers::pi;

        // rows (i, j) <- G (rows i, j), G = [[c, s], [-s, c]]
        void rotate_rows(Matrix &m, std::size_t i, std::size_t j, double c, double s)
        {
            auto ri = m.row(i);
            auto rj = m.row(j);
            for (std::size_t k = 0; k < m.cols(); ++k)
            {
                const double a = ri[k], b = rj[k];
                ri[k] = c * a + s * b;
                rj[k] = -s * a + c * b;
            }
        }
    }

    GivensFactorization givens_factorize(const Matrix &q)
    {
        const std::size_t n = q.rows();
        if (q.cols() != n || n == 0)
            throw ParameterError("givens_factorize: matrix must be square and nonempty");
        const Matrix gram = matmul_tn(q, q) - Matrix::identity(n);
        if (frobenius_norm(gram) > 1e-6)
            throw ParameterError("givens_factorize: matrix is not orthogonal");

        GivensFactorization f;
        f.n = n;
        f.angles.reserve(n * (n - 1) / 2);
        Matrix r = q;
        for (std::size_t col = 0; col + 1 < n; ++col)
        {
            for (std::size_t row = col + 1; row < n; ++row)
            {
                double theta = std::atan2(r(row, col), r(col, col));
                if (theta >= pi)
                    theta -= 2 * pi;
                rotate_rows(r, col, row, std::cos(theta), std::sin(theta));
                r(row, col) = 0.0;
                f.angles.push_back({col, row, theta});
            }
        }
        f.signs.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            f.signs[k] = r(k, k) < 0.0 ? -1 : 1;
        return f;
    }

    double quantize_angle(double theta, unsigned bits)
    {
        if (bits < kMinAngleBits || bits > kMaxAngleBits)
            throw ParameterError("quantize_angle: bit depth must lie in [2, 16]");
        const double levels = std::ldexp(1.0, static_cast<int>(bits));
        const double step = 2 * pi / levels;
        double idx = std::floor((theta + pi) / step);
        if (idx < 0.0)
            idx = 0.0;
        if (idx > levels - 1)
            idx = levels - 1;
        return -pi + (idx + 0.5) * step;
    }

    GivensFactorization quantize_angles(const GivensFactorization &f, unsigned bits)
    {
        if (bits < kMinAngleBits || bits > kMaxAngleBits)
            throw ParameterError("quantize_angles: bit depth must lie in [2, 16]");
        GivensFactorization out = f;
        for (auto &a : out.angles)
            a.theta = quantize_angle(a.theta, bits);
        out.bit_depth = bits;
        return out;
    }

    Matrix reconstruct_basis(const GivensFactorization &f)
    {
        if (f.signs.size() != f.n)
            throw ParameterError("reconstruct_basis: sign vector length differs from order");
        Matrix m(f.n, f.n);
        for (std::size_t k = 0; k < f.n; ++k)
            m(k, k) = static_cast<double>(f.signs[k]);
        for (auto it = f.angles.rbegin(); it != f.angles.rend(); ++it)
        {
            if (it->i >= f.n || it->j >= f.n)
                throw ParameterError("reconstruct_basis: rotation index out of range");
            // G^T = [[c, -s], [s, c]]
            rotate_rows(m, it->i, it->j, std::cos(it->theta), -std::sin(it->theta));
        }
        return m;
    }

    std::vector<double> serialize_givens(const GivensFactorization &f)
    {
        std::vector<double> flat;
        flat.reserve(2 + 3 * f.angles.size() + f.n);
        flat.push_back(static_cast<double>(f.n));
        flat.push_back(static_cast<double>(f.angles.size()));
        for (const auto &a : f.angles)
        {
            flat.push_back(static_cast<double>(a.i));
            flat.push_back(static_cast<double>(a.j));
            flat.push_back(a.theta);
        }
        for (int s : f.signs)
            flat.push_back(static_cast<double>(s));
        return flat;
    }

    GivensFactorization deserialize_givens(const std::vector<double> &flat)
    {
        if (flat.size() < 2)
            throw FormatError("deserialize_givens: buffer too short");
        GivensFactorization f;
        f.n = static_cast<std::size_t>(flat[0]);
        const auto count = static_cast<std::size_t>(flat[1]);
        if (flat.size() != 2 + 3 * count + f.n)
            throw FormatError("deserialize_givens: length does not match header");
        for (std::size_t k = 0; k < count; ++k)
            f.angles.push_back({static_cast<std::size_t>(flat[2 + 3 * k]), static_cast<std::size_t>(flat[3 + 3 * k]),
                                flat[4 + 3 * k]});
        for (std::size_t k = 0; k < f.n; ++k)
            f.signs.push_back(flat[2 + 3 * count + k] < 0.0 ? -1 : 1);
        return f;
    }
}
