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

#include "qia/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "qia/augment.hpp"
#include "qia/errors.hpp"
#include "qia/rng.hpp"
#include "qia/spectral.hpp"

namespace qia {

ImageBuffer dp_noise(const ImageBuffer& img, const DpParams& params) {
    if (!(params.epsilon > 0.0) || !(params.sensitivity > 0.0)) {
        throw InvalidInputError("epsilon and sensitivity must be positive");
    }
    img.require_consistent();
    const double scale = params.sensitivity / params.epsilon;
    ImageBuffer out = img;
    for (std::size_t c = 0; c < out.channels.size(); ++c) {
        Rng rng(mix_seed(params.seed, c));
        for (double& v : out.channels[c].data) {
            v += rng.laplace(scale);
        }
    }
    return out;
}

EncryptResult strong_rotation_encrypt(const ImageBuffer& img, double theta_max,
                                      std::uint64_t seed, bool keep_states) {
    img.require_consistent();
    EncryptResult result;
    const AmplitudeState probe = embed(img.channels.front());
    result.plan = sample_plan(probe.n_qubits, AxesMode::ZOnly, theta_max, seed);
    std::vector<double> angles;
    angles.reserve(result.plan.per_qubit.size());
    for (const auto& tuple : result.plan.per_qubit) angles.push_back(tuple.front().angle);

    for (const auto& channel : img.channels) {
        AmplitudeState state = apply_qrz_fast(embed(channel), angles);
        result.image.channels.push_back(project_abs(state));
        if (keep_states) result.states.push_back(std::move(state));
    }
    return result;
}

namespace {

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw InvalidInputError("spectra lengths differ");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

std::string WitnessReport::to_json() const {
    std::ostringstream out;
    out.precision(17);
    const char* v = verdict == WitnessVerdict::Positive     ? "positive"
                    : verdict == WitnessVerdict::Negative   ? "negative"
                                                            : "inconclusive";
    out << "{\"trials\":" << trials << ",\"min_own_distance\":" << min_own_distance
        << ",\"min_cross_distance\":" << min_cross_distance << ",\"verdict\":\"" << v << "\"}";
    return out.str();
}

WitnessReport non_dp_witness(const ImageBuffer& img_a, const ImageBuffer& img_b,
                             double theta_max, std::uint64_t seed, int trials) {
    img_a.require_consistent();
    img_b.require_consistent();
    if (img_a.rows() != img_b.rows() || img_a.cols() != img_b.cols()) {
        throw InvalidInputError("witness images must share a shape");
    }
    if (!power_of_two(img_a.rows()) || !power_of_two(img_a.cols())) {
        throw InvalidInputError("witness images need power-of-two dimensions");
    }
    if (trials < 1) {
        throw InvalidInputError("need at least one trial");
    }

    const RealGrid gray_a = to_grayscale(img_a);
    const RealGrid gray_b = to_grayscale(img_b);
    const std::vector<double> spec_a = singular_values(gray_a);
    const std::vector<double> spec_b = singular_values(gray_b);

    WitnessReport report;
    report.trials = trials;
    report.declared_gap = 0.5 * linf_distance(spec_a, spec_b);

    constexpr double kOwnTolerance = 1e-9;
    if (report.declared_gap * 2.0 < kOwnTolerance) {
        // Equal spectra cannot be told apart by this experiment.
        report.verdict = WitnessVerdict::Inconclusive;
        return report;
    }

    const AmplitudeState base_a = embed(gray_a);
    const AmplitudeState base_b = embed(gray_b);
    // Row bits are the high bits, so cutting at the row-bit count reproduces
    // the pixel matrix exactly.
    int cut = 0;
    while ((std::size_t{1} << cut) < gray_a.rows) ++cut;

    report.min_own_distance = std::numeric_limits<double>::infinity();
    report.min_cross_distance = std::numeric_limits<double>::infinity();
    bool all_identified = true;
    for (int t = 0; t < trials; ++t) {
        const RotationPlan plan = sample_plan(base_a.n_qubits, AxesMode::Xyz, theta_max,
                                              mix_seed(seed, static_cast<std::uint64_t>(t)));
        const std::vector<double> out_a = schmidt_coefficients(apply_plan(base_a, plan), cut);
        const std::vector<double> out_b = schmidt_coefficients(apply_plan(base_b, plan), cut);

        const double own_a = linf_distance(out_a, spec_a);
        const double own_b = linf_distance(out_b, spec_b);
        const double cross_a = linf_distance(out_a, spec_b);
        const double cross_b = linf_distance(out_b, spec_a);

        report.min_own_distance = std::min({report.min_own_distance, own_a, own_b});
        report.max_own_distance = std::max({report.max_own_distance, own_a, own_b});
        report.min_cross_distance = std::min({report.min_cross_distance, cross_a, cross_b});
        if (own_a >= kOwnTolerance || own_b >= kOwnTolerance ||
            cross_a <= report.declared_gap || cross_b <= report.declared_gap) {
            all_identified = false;
        }
    }
    report.verdict = all_identified ? WitnessVerdict::Positive : WitnessVerdict::Negative;
    return report;
}

}  // namespace qia
