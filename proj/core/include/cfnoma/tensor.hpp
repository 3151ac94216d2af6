// SPDX-License-Identifier: Apache-2.0
//
// cfnoma - downlink rate analysis for cell-free massive MIMO-NOMA
// Copyright (C) 2026 The cfnoma Authors
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
#include <span>
#include <vector>

namespace cfnoma
{

/// Dense row-major M x N x K array of doubles, indexed (ap, cluster, user).
class Tensor3
{
public:
    Tensor3() = default;
    Tensor3(std::size_t aps, std::size_t clusters, std::size_t users, double fill = 0.0)
        : aps_(aps), clusters_(clusters), users_(users), data_(aps * clusters * users, fill)
    {
    }

    std::size_t aps() const noexcept { return aps_; }
    std::size_t clusters() const noexcept { return clusters_; }
    std::size_t users() const noexcept { return users_; }
    std::size_t size() const noexcept { return data_.size(); }

    double &operator()(std::size_t m, std::size_t n, std::size_t k) noexcept
    {
        return data_[(m * clusters_ + n) * users_ + k];
    }
    double operator()(std::size_t m, std::size_t n, std::size_t k) const noexcept
    {
        return data_[(m * clusters_ + n) * users_ + k];
    }

    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    bool same_shape(const Tensor3 &other) const noexcept
    {
        return aps_ == other.aps_ && clusters_ == other.clusters_ && users_ == other.users_;
    }

    bool operator==(const Tensor3 &) const = default;

private:
    std::size_t aps_ = 0;
    std::size_t clusters_ = 0;
    std::size_t users_ = 0;
    std::vector<double> data_;
};

/// Dense row-major R x C matrix of doubles (used for M x N and N x K tables).
class Table
{
public:
    Table() = default;
    Table(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    bool operator==(const Table &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace cfnoma
