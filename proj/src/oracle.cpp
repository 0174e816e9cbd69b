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

#include "qia/oracle.hpp"

#include <string>

#include "qia/errors.hpp"

namespace qia {

namespace {

// Gates composed here independently of the fast path's pass loop; only the
// 2x2 primitives are shared.
Gate2x2 qubit_product(const std::vector<AxisAngle>& tuple) {
    Gate2x2 g = Gate2x2::identity();
    for (const AxisAngle& aa : tuple) {
        g = multiply(rotation_gate(aa.axis, aa.angle), g);
    }
    return g;
}

// kron(A, B) with B indexing the low bits.
DenseOperator kron(const DenseOperator& a, const Gate2x2& b) {
    DenseOperator out;
    out.dim = a.dim * 2;
    out.entries.resize(out.dim * out.dim);
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t c = 0; c < a.dim; ++c) {
            const c64 v = a.at(r, c);
            out.at(2 * r, 2 * c) = v * b.m[0];
            out.at(2 * r, 2 * c + 1) = v * b.m[1];
            out.at(2 * r + 1, 2 * c) = v * b.m[2];
            out.at(2 * r + 1, 2 * c + 1) = v * b.m[3];
        }
    }
    return out;
}

}  // namespace

DenseOperator build_dense(const RotationPlan& plan, int max_qubits) {
    const int n = plan.n_qubits();
    if (n < 1) {
        throw InvalidInputError("plan has no qubits");
    }
    if (n > max_qubits) {
        throw ResourceLimitError("dense operator limited to " + std::to_string(max_qubits) +
                                 " qubits, plan has " + std::to_string(n));
    }
    DenseOperator op;
    op.dim = 1;
    op.entries = {c64(1, 0)};
    // Highest qubit first so that qubit 0 lands on the least significant bit.
    for (int q = n - 1; q >= 0; --q) {
        op = kron(op, qubit_product(plan.per_qubit[static_cast<std::size_t>(q)]));
    }
    return op;
}

AmplitudeState apply_dense(const DenseOperator& op, const AmplitudeState& state) {
    if (op.dim != state.dim()) {
        throw InvalidInputError("operator and state dimensions differ");
    }
    AmplitudeState out = state;
    for (std::size_t r = 0; r < op.dim; ++r) {
        c64 acc(0, 0);
        const c64* row = &op.entries[r * op.dim];
        for (std::size_t c = 0; c < op.dim; ++c) {
            acc += row[c] * state.amplitudes[c];
        }
        out.amplitudes[r] = acc;
    }
    return out;
}

}  // namespace qia
