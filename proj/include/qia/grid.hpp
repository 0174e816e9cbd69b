// Copyright 2026 The qia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qia/errors.hpp"

namespace qia {

/// Row-major 2D array of doubles. The single-channel carrier passed between
/// the classical and quantum domains.
struct RealGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols entries, row-major

    RealGrid() = default;
    RealGrid(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return rows * cols; }

    std::pair<double, double> value_range() const {
        auto [lo, hi] = std::minmax_element(data.begin(), data.end());
        return {*lo, *hi};
    }
};

/// Row-major 2D array of complex doubles (extracted rotated states).
struct ComplexGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::complex<double>> data;

    ComplexGrid() = default;
    ComplexGrid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return rows * cols; }
};

/// Multi-channel image. All channels share dimensions; pixel values are
/// doubles in the image's native scale (8-bit sources load as 0..255).
struct ImageBuffer {
    std::vector<RealGrid> channels;

    ImageBuffer() = default;
    explicit ImageBuffer(RealGrid single) { channels.push_back(std::move(single)); }
    ImageBuffer(std::size_t n_channels, std::size_t rows, std::size_t cols) {
        channels.assign(n_channels, RealGrid(rows, cols));
    }

    std::size_t rows() const { return channels.empty() ? 0 : channels.front().rows; }
    std::size_t cols() const { return channels.empty() ? 0 : channels.front().cols; }
    std::size_t channel_count() const { return channels.size(); }

    /// Observed (min, max) of one channel.
    std::pair<double, double> value_range(std::size_t channel) const {
        return channels.at(channel).value_range();
    }

    void require_consistent() const {
        if (channels.empty() || rows() == 0 || cols() == 0) {
            throw InvalidInputError("image must have at least one non-empty channel");
        }
        for (const auto& ch : channels) {
            if (ch.rows != rows() || ch.cols != cols() || ch.data.size() != ch.rows * ch.cols) {
                throw InvalidInputError("image channels must share dimensions");
            }
        }
    }
};

}  // namespace qia
