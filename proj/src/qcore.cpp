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

#include "qia/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "qia/errors.hpp"
#include "qia/rng.hpp"

namespace qia {

Gate2x2 multiply(const Gate2x2& a, const Gate2x2& b) {
    return {{
        a.m[0] * b.m[0] + a.m[1] * b.m[2],
        a.m[0] * b.m[1] + a.m[1] * b.m[3],
        a.m[2] * b.m[0] + a.m[3] * b.m[2],
        a.m[2] * b.m[1] + a.m[3] * b.m[3],
    }};
}

Gate2x2 adjoint(const Gate2x2& g) {
    return {{std::conj(g.m[0]), std::conj(g.m[2]), std::conj(g.m[1]), std::conj(g.m[3])}};
}

Gate2x2 rotation_gate(Axis axis, double theta) {
    if (!std::isfinite(theta)) {
        throw InvalidInputError("rotation angle must be finite");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (axis) {
        case Axis::X:
            return {{c64(c, 0), c64(0, -s), c64(0, -s), c64(c, 0)}};
        case Axis::Y:
            return {{c64(c, 0), c64(-s, 0), c64(s, 0), c64(c, 0)}};
        case Axis::Z:
            return {{c64(c, -s), c64(0, 0), c64(0, 0), c64(c, s)}};
    }
    throw InvalidInputError("unknown rotation axis");
}

Gate2x2 hadamard_gate() {
    const double h = 0.70710678118654752440084436210485;
    return {{c64(h, 0), c64(h, 0), c64(h, 0), c64(-h, 0)}};
}

Gate2x2 s_gate() {
    return {{c64(1, 0), c64(0, 0), c64(0, 0), c64(0, -1)}};
}

AmplitudeState embed(const RealGrid& channel) {
    const std::size_t count = channel.rows * channel.cols;
    if (count == 0 || channel.data.size() != count) {
        throw InvalidInputError("cannot embed an empty channel");
    }
    int n = 1;
    while ((std::size_t{1} << n) < count) {
        ++n;
        if (n > 30) {
            throw ResourceLimitError("channel too large to embed");
        }
    }
    AmplitudeState state;
    state.n_qubits = n;
    state.source_rows = channel.rows;
    state.source_cols = channel.cols;
    const std::size_t dim = std::size_t{1} << n;
    state.pad_len = dim - count;
    state.amplitudes.assign(dim, c64(0, 0));
    for (std::size_t i = 0; i < count; ++i) {
        state.amplitudes[i] = c64(channel.data[i], 0);
    }
    return state;
}

ComplexGrid extract(const AmplitudeState& state) {
    ComplexGrid out(state.source_rows, state.source_cols);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data[i] = state.amplitudes[i];
    }
    return out;
}

RotationPlan sample_plan(int n_qubits, AxesMode mode, double theta_max, std::uint64_t seed) {
    if (n_qubits < 1) {
        throw InvalidInputError("plans need at least one qubit");
    }
    if (!(theta_max >= 0.0) || !std::isfinite(theta_max)) {
        throw InvalidInputError("theta_max must be finite and non-negative");
    }
    RotationPlan plan;
    plan.theta_max = theta_max;
    plan.seed = seed;
    plan.per_qubit.resize(static_cast<std::size_t>(n_qubits));

    Rng rng(seed);
    const Axis single = mode == AxesMode::XOnly   ? Axis::X
                        : mode == AxesMode::YOnly ? Axis::Y
                                                  : Axis::Z;
    for (auto& tuple : plan.per_qubit) {
        if (mode == AxesMode::Xyz) {
            Axis order[3] = {Axis::X, Axis::Y, Axis::Z};
            rng.shuffle(order);
            tuple.reserve(3);
            for (Axis axis : order) {
                tuple.push_back({axis, rng.uniform(0.0, theta_max)});
            }
        } else {
            tuple.push_back({single, rng.uniform(0.0, theta_max)});
        }
    }
    return plan;
}

namespace {

// Product of one qubit's rotations in application order (first entry acts
// first, so it sits rightmost in the product).
Gate2x2 composed_gate(const std::vector<AxisAngle>& tuple) {
    Gate2x2 g = Gate2x2::identity();
    for (const AxisAngle& aa : tuple) {
        g = multiply(rotation_gate(aa.axis, aa.angle), g);
    }
    return g;
}

}  // namespace

AmplitudeState apply_plan(AmplitudeState state, const RotationPlan& plan) {
    const int n = state.n_qubits;
    if (plan.n_qubits() != n) {
        throw InvalidInputError("plan and state qubit counts differ");
    }
    const std::size_t dim = state.dim();
    const std::size_t half = dim / 2;
    std::vector<c64> next(dim);
    std::vector<c64>& cur = state.amplitudes;

    // Pass p sees the original qubit n-1-p at the top address bit (each pass
    // rotates the bit string up by one); feed it that qubit's gate.
    for (int p = 0; p < n; ++p) {
        const Gate2x2 g = composed_gate(plan.per_qubit[static_cast<std::size_t>(n - 1 - p)]);
        for (std::size_t c = 0; c < half; ++c) {
            const c64 a = cur[c];
            const c64 b = cur[c + half];
            next[2 * c] = g.m[0] * a + g.m[1] * b;
            next[2 * c + 1] = g.m[2] * a + g.m[3] * b;
        }
        cur.swap(next);
    }
    return state;
}

AmplitudeState apply_qrz_fast(AmplitudeState state, const std::vector<double>& angles) {
    const std::size_t n = static_cast<std::size_t>(state.n_qubits);
    if (angles.size() != n) {
        throw InvalidInputError("angle count must equal the qubit count");
    }
    const std::size_t dim = state.dim();

    // phi_k follows from phi of k with its lowest set bit cleared: flipping
    // bit i from 0 to 1 adds 2 * angles[i] to the signed sum.
    std::vector<double> phase(dim);
    double all_clear = 0.0;
    for (double a : angles) all_clear -= a;
    phase[0] = all_clear;
    for (std::size_t k = 1; k < dim; ++k) {
        phase[k] = phase[k & (k - 1)] + 2.0 * angles[static_cast<std::size_t>(std::countr_zero(k))];
    }
    for (std::size_t k = 0; k < dim; ++k) {
        const double half_angle = 0.5 * phase[k];
        state.amplitudes[k] *= c64(std::cos(half_angle), std::sin(half_angle));
    }
    return state;
}

RotationPlan invert_plan(const RotationPlan& plan) {
    RotationPlan inv = plan;
    for (auto& tuple : inv.per_qubit) {
        std::reverse(tuple.begin(), tuple.end());
        for (AxisAngle& aa : tuple) {
            aa.angle = -aa.angle;
        }
    }
    return inv;
}

double state_norm(const AmplitudeState& state) {
    double sum = 0.0;
    for (const c64& a : state.amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

}  // namespace qia
