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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace softpc
{
    /// Dense row-major matrix of doubles.
    class Matrix
    {
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
        Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
        Matrix(std::initializer_list<std::initializer_list<double>> rows);

        static Matrix identity(std::size_t n);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }

        double &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
        double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

        std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
        std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

        std::span<double> values() noexcept { return data_; }
        std::span<const double> values() const noexcept { return data_; }
        const std::vector<double> &storage() const noexcept { return data_; }

        void fill(double v);
        bool same_shape(const Matrix &other) const noexcept { return rows_ == other.rows_ && cols_ == other.cols_; }

        Matrix &operator+=(const Matrix &other);
        Matrix &operator-=(const Matrix &other);
        Matrix &operator*=(double s);

        bool operator==(const Matrix &other) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<double> data_;
    };

    Matrix operator+(Matrix a, const Matrix &b);
    Matrix operator-(Matrix a, const Matrix &b);
    Matrix operator*(Matrix a, double s);

    Matrix transpose(const Matrix &a);
    Matrix matmul(const Matrix &a, const Matrix &b);    // a * b
    Matrix matmul_tn(const Matrix &a, const Matrix &b); // a^T * b
    Matrix matmul_nt(const Matrix &a, const Matrix &b); // a * b^T

    double frobenius_norm(const Matrix &a);
    double max_abs(const Matrix &a);
    bool all_finite(const Matrix &a);
}
