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

#include <cstddef>
#include <vector>

#include "qia/qcore.hpp"

namespace qia {

/// Fully materialized rotation operator. Deliberately naive; exists so the
/// fast kernels have an independent reference to be checked against, and as
/// the O(N^2) baseline in benchmarks.
struct DenseOperator {
    std::size_t dim = 0;
    std::vector<c64> entries;  // dim * dim, row-major

    c64& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const c64& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

/// Kronecker product of the per-qubit composed gates, qubit 0 as the least
/// significant address bit (rightmost Kronecker factor). Plans beyond
/// `max_qubits` are refused; 12 qubits is already a 4096^2 complex matrix.
DenseOperator build_dense(const RotationPlan& plan, int max_qubits = 12);

/// Plain dense matrix-vector product.
AmplitudeState apply_dense(const DenseOperator& op, const AmplitudeState& state);

}  // namespace qia
