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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qia/grid.hpp"

namespace qia {

using c64 = std::complex<double>;

enum class Axis { X, Y, Z };

enum class AxesMode { XOnly, YOnly, ZOnly, Xyz };

/// One rotation applied to one qubit.
struct AxisAngle {
    Axis axis;
    double angle;  // radians
};

/// Dense 2x2 complex matrix, row-major. All gates produced here are unitary.
struct Gate2x2 {
    c64 m[4];

    static Gate2x2 identity() { return {{c64(1, 0), c64(0, 0), c64(0, 0), c64(1, 0)}}; }
};

Gate2x2 multiply(const Gate2x2& a, const Gate2x2& b);
Gate2x2 adjoint(const Gate2x2& g);

/// Bloch rotation about `axis` by `theta`:
///   R_X = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]
///   R_Y = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
///   R_Z = diag(e^{-i t/2}, e^{+i t/2})
/// Throws InvalidInputError for non-finite theta.
Gate2x2 rotation_gate(Axis axis, double theta);

/// Hadamard. Satisfies rotation_gate(X, t) == H * rotation_gate(Z, t) * H.
Gate2x2 hadamard_gate();

/// Quarter phase gate, diag(1, -i). The sign is fixed by the companion
/// identity rotation_gate(Y, t) == S^dagger * H * rotation_gate(Z, t) * H * S.
Gate2x2 s_gate();

/// Flattened image amplitudes. Addresses are little-endian: qubit i is bit i
/// of the amplitude index, so for a rows x cols embed the column bits are the
/// low bits and the row bits are the high bits.
struct AmplitudeState {
    std::vector<c64> amplitudes;  // length 2^n_qubits
    int n_qubits = 0;
    std::size_t source_rows = 0;
    std::size_t source_cols = 0;
    std::size_t pad_len = 0;  // zero-padded tail entries at embed time

    std::size_t dim() const { return amplitudes.size(); }
};

/// Per-qubit ordered rotations. `per_qubit[q]` lists qubit q's gates in the
/// order they are applied to the state (first entry acts first). Plans from
/// sample_plan have angles in [0, theta_max]; inverted plans negate them.
struct RotationPlan {
    std::vector<std::vector<AxisAngle>> per_qubit;
    double theta_max = 0.0;
    std::uint64_t seed = 0;

    int n_qubits() const { return static_cast<int>(per_qubit.size()); }
};

/// Embed a channel into amplitudes: row-major flatten, zero-padded to the
/// next power of two (at least 2). No norm scaling is applied; pixel values
/// become amplitudes as-is.
AmplitudeState embed(const RealGrid& channel);

/// Inverse of embed up to padding: the first rows*cols amplitudes reshaped
/// row-major. Amplitude leaked into the padded tail by rotations is dropped.
ComplexGrid extract(const AmplitudeState& state);

/// Draw a plan. XYZ mode gives every qubit an independent uniformly random
/// permutation of (X, Y, Z) and three angles; single-axis modes give one
/// angle per qubit. Angles are uniform on the closed interval [0, theta_max].
///
/// The seed -> plan mapping is stable across platforms: an mt19937_64 engine
/// seeded with splitmix64(seed) supplies raw 64-bit words, per qubit first
/// the axis permutation (Fisher-Yates) and then the angles in application
/// order, each angle mapped as (word >> 11) / (2^53 - 1) * theta_max.
RotationPlan sample_plan(int n_qubits, AxesMode mode, double theta_max, std::uint64_t seed);

/// Apply the plan's Kronecker-product rotation without materializing it.
///
/// Runs n passes over the state. Each pass views the vector as a 2 x (N/2)
/// matrix, left-multiplies by the 2x2 gate of the qubit currently occupying
/// the top address bit (the qubit's rotations pre-composed into one matrix),
/// then transposes and re-flattens, which cycles every address bit up by one.
/// After n passes each qubit has been hit once and the bit order is back to
/// where it started. O(N log N) total, O(N) scratch.
AmplitudeState apply_plan(AmplitudeState state, const RotationPlan& plan);

/// Z-only fast path: the full rotation is diagonal, so amplitude k picks up
/// the phase factor exp(i * phi_k / 2) with
///   phi_k = sum_i s_i(k) * angles[i],  s_i(k) = +1 if bit i of k is set, else -1.
/// O(N) time. Matches apply_plan on the equivalent Z-only plan to fp accuracy.
AmplitudeState apply_qrz_fast(AmplitudeState state, const std::vector<double>& angles);

/// Exact inverse: per-qubit order reversed, every angle negated.
/// apply_plan(apply_plan(s, p), invert_plan(p)) recovers s.
RotationPlan invert_plan(const RotationPlan& plan);

/// Euclidean norm of the amplitude vector.
double state_norm(const AmplitudeState& state);

}  // namespace qia
