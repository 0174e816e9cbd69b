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
#include <utility>
#include <vector>

#include "qia/augment.hpp"
#include "qia/grid.hpp"
#include "qia/qcore.hpp"

namespace qia {

struct SpectrumMeta {
    std::string spec_text;
    double theta_max = 0.0;
    std::uint64_t seed = 0;
    int corpus_size = 0;
    bool convert_uint8 = false;
};

/// Descending singular values of one channel, optionally with the signed
/// per-index difference against a baseline spectrum.
struct SpectrumReport {
    std::vector<double> values;
    std::vector<double> diff_vs_baseline;  // empty until a diff is taken
    SpectrumMeta meta;
};

/// The min(rows, cols) singular values, descending. Values are reported
/// as computed, never truncated.
std::vector<double> singular_values(const RealGrid& channel);
std::vector<double> singular_values(const ComplexGrid& channel);

/// Schmidt coefficients across the qubit boundary: the state reshaped to
/// 2^cut x 2^(n-cut) with the low n-cut address bits as columns, then its
/// singular values. For an unpadded row-major embed with cut = row bits this
/// is exactly the image's singular value spectrum.
std::vector<double> schmidt_coefficients(const AmplitudeState& state, int cut);

/// Store augmented - baseline in diff_vs_baseline.
SpectrumReport spectrum_diff(SpectrumReport augmented, const SpectrumReport& baseline);

/// Luminance average of the channels.
RealGrid to_grayscale(const ImageBuffer& img);

/// Grayscale + bilinear resize to target x target (used before corpus
/// analysis; target must be a power of two so embeds are unpadded).
ImageBuffer prepare_for_analysis(const ImageBuffer& img, std::size_t target = 256);

/// Run the pipeline over the first `count` corpus images and average the
/// spectra; diff_vs_baseline holds the difference to the averaged baseline
/// spectra. Images must already share one square power-of-two size.
///
/// convert_uint8 = false analyses raw augmented floats with the pipeline's
/// renormalization off. convert_uint8 = true runs the renormalizing pipeline
/// and then clamps to [0,255] and rounds before the SVD, the path an 8-bit
/// consumer sees. Pipelines whose output is complex plane pairs are analysed
/// as complex matrices (planes recombined).
SpectrumReport average_spectra(const std::vector<ImageBuffer>& corpus, const AugmentSpec& spec,
                               int count, const AugmentParams& params, std::uint64_t seed,
                               bool convert_uint8);

/// Mean and variance of the signed angle sum over one register address:
/// n angles uniform on [0, theta_max], with the address' m set bits counted
/// negative. Returns ((n - 2m) * theta / 2, n * theta^2 / 12).
std::pair<double, double> qrz_factor_stats(int n, double theta_max, int popcount_m);

struct GaussianApproxReport {
    int n = 0;
    int samples = 0;
    double ks_distance = 0.0;  // empirical CDF vs Normal(mu, sigma^2)
    bool pass = false;         // ks_distance < 0.02
};

/// Kolmogorov-Smirnov distance between the sampled angle-sum distribution
/// (plans drawn with sample_plan, Z mode) and its Gaussian limit. The sum of
/// n uniforms is close to Gaussian already for n > 10 and far from it at
/// n = 1; the report's pass flag pins the 0.02 threshold.
GaussianApproxReport gaussian_approx_check(int n, double theta_max, int samples,
                                           std::uint64_t seed);

/// CSV rows "index,value[,diff]" with a header line.
std::string spectrum_to_csv(const SpectrumReport& report);

/// JSON object with meta fields plus values/diff arrays.
std::string spectrum_to_json(const SpectrumReport& report);

}  // namespace qia
