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

#include "softpc/matrix.hpp"
#include "softpc/error.hpp"

#include <algorithm>
#include <cmath>

namespace softpc
{
    Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
        : rows_(rows), cols_(cols), data_(std::move(values))
    {
        if (data_.size() != rows * cols)
            throw ParameterError("Matrix: value count does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }

    Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows)
        {
            if (r.size() != cols_)
                throw ParameterError("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    Matrix Matrix::identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    void Matrix::fill(double v)
    {
        std::fill(data_.begin(), data_.end(), v);
    }

    Matrix &Matrix::operator+=(const Matrix &other)
    {
        if (!same_shape(other))
            throw ParameterError("Matrix +=: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += other.data_[i];
        return *this;
    }

    Matrix &Matrix::operator-=(const Matrix &other)
    {
        if (!same_shape(other))
            throw ParameterError("Matrix -=: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= other.data_[i];
        return *this;
    }

    Matrix &Matrix::operator*=(double s)
    {
        for (auto &v : data_)
            v *= s;
        return *this;
    }

    Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    Matrix operator*(Matrix a, double s) { return a *= s; }

    Matrix transpose(const Matrix &a)
    {
        Matrix t(a.cols(), a.rows());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                t(c, r) = a(r, c);
        return t;
    }

    Matrix matmul(const Matrix &a, const Matrix &b)
    {
        if (a.cols() != b.rows())
            throw ParameterError("matmul: inner dimensions differ");
        Matrix out(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            auto orow = out.row(i);
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const double aik = a(i, k);
                if (aik == 0.0)
                    continue;
                auto brow = b.row(k);
                for (std::size_t j = 0; j < b.cols(); ++j)
                    orow[j] += aik * brow[j];
            }
        }
        return out;
    }

    Matrix matmul_tn(const Matrix &a, const Matrix &b)
    {
        if (a.rows() != b.rows())
            throw ParameterError("matmul_tn: row counts differ");
        Matrix out(a.cols(), b.cols());
        for (std::size_t k = 0; k < a.rows(); ++k)
        {
            auto arow = a.row(k);
            auto brow = b.row(k);
            for (std::size_t i = 0; i < a.cols(); ++i)
            {
                const double aki = arow[i];
                if (aki == 0.0)
                    continue;
                auto orow = out.row(i);
                for (std::size_t j = 0; j < b.cols(); ++j)
                    orow[j] += aki * brow[j];
            }
        }
        return out;
    }

    Matrix matmul_nt(const Matrix &a, const Matrix &b)
    {
        if (a.cols() != b.cols())
            throw ParameterError("matmul_nt: column counts differ");
        Matrix out(a.rows(), b.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            auto arow = a.row(i);
            for (std::size_t j = 0; j < b.rows(); ++j)
            {
                auto brow = b.row(j);
                double s = 0.0;
                for (std::size_t k = 0; k < a.cols(); ++k)
                    s += arow[k] * brow[k];
                out(i, j) = s;
            }
        }
        return out;
    }

    double frobenius_norm(const Matrix &a)
    {
        double s = 0.0;
        for (double v : a.values())
            s += v * v;
        return std::sqrt(s);
    }

    double max_abs(const Matrix &a)
    {
        double m = 0.0;
        for (double v : a.values())
            m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite(const Matrix &a)
    {
        return std::all_of(a.values().begin(), a.values().end(), [](double v)
                           { return std::isfinite(v); });
    }
}
