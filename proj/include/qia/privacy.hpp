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

#include <cstdint>
#include <string>
#include <vector>

#include "qia/grid.hpp"
#include "qia/qcore.hpp"

namespace qia {

struct DpParams {
    double epsilon = 1.0;        // privacy budget, > 0
    double delta = 0.0;          // reported only, never enforced
    double sensitivity = 255.0;  // max per-pixel change from one input edit
    std::uint64_t seed = 0;
};

/// Laplace mechanism per pixel per channel: adds Laplace(sensitivity /
/// epsilon) noise. Deterministic per seed; channels draw from independent
/// streams.
ImageBuffer dp_noise(const ImageBuffer& img, const DpParams& params);

/// Strong seeded Z rotation as a toy cipher: the plan is the key.
struct EncryptResult {
    ImageBuffer image;                  // abs()-projected output
    RotationPlan plan;                  // shared by all channels
    std::vector<AmplitudeState> states; // rotated complex states, kept on request
};

/// Applies a Z-only plan at `theta_max` (one plan for the whole image) and
/// returns the abs projection. The complex states are recoverable only with
/// the plan; pass keep_states to retain them for decryption round trips.
EncryptResult strong_rotation_encrypt(const ImageBuffer& img, double theta_max,
                                      std::uint64_t seed, bool keep_states = false);

enum class WitnessVerdict { Positive, Negative, Inconclusive };

/// Outcome of the spectrum-identification experiment. A Positive verdict
/// means every trial's rotated output was matched to its source image by
/// spectrum alone (own distance under 1e-9, cross distance above the
/// declared gap), i.e. the rotation leaks source identity with certainty
/// and cannot satisfy differential privacy.
struct WitnessReport {
    int trials = 0;
    double min_own_distance = 0.0;
    double max_own_distance = 0.0;
    double min_cross_distance = 0.0;
    double declared_gap = 0.0;
    WitnessVerdict verdict = WitnessVerdict::Inconclusive;

    std::string to_json() const;
};

/// For each trial, apply an independent projection-free rotation plan to
/// both images and compare the output Schmidt spectra against each input's
/// spectrum (L-infinity). Images must share a power-of-two shape; inputs
/// whose spectra already agree within 1e-9 give Inconclusive.
WitnessReport non_dp_witness(const ImageBuffer& img_a, const ImageBuffer& img_b,
                             double theta_max, std::uint64_t seed, int trials);

}  // namespace qia
