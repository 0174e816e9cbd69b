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
#include <memory>
#include <string>
#include <string_view>

#include "qia/grid.hpp"
#include "qia/qcore.hpp"

namespace qia {

/// Pipeline operators. Grammar: expr := "x" | op "(" expr ")".
enum class OpKind {
    Input,              // x
    GaussianNoise,      // GN
    FlipH,              // F
    PerfectRotation,    // PR
    ClassicalRotation,  // CR
    CenterCrop,         // C
    QrX,
    QrY,
    QrZ,
    QrXyz,
    Real,
    Abs,
};

struct SpecNode {
    OpKind kind;
    std::unique_ptr<SpecNode> child;  // null for Input
    std::size_t src_offset = 0;       // byte position of the operator token
};

/// Parsed pipeline. Immutable after parse; copies share the tree.
class AugmentSpec {
  public:
    const SpecNode& root() const { return *root_; }
    const std::string& text() const { return text_; }

    /// True when the outermost data is complex, i.e. some QR node's output
    /// reaches the end of the pipeline without passing a real()/abs()
    /// projection. Such pipelines emit (real, imaginary) plane pairs.
    bool has_unprojected_qr() const { return unprojected_qr_; }

  private:
    friend AugmentSpec parse_spec(std::string_view text);
    std::shared_ptr<const SpecNode> root_;
    std::string text_;
    bool unprojected_qr_ = false;
};

/// Parse and validate a pipeline string. Whitespace-insensitive.
/// Rejects, with byte offsets: unknown operators, malformed nesting,
/// projections with no QR operator underneath (they would be identities on
/// classical data), and abs() directly over QR_Z (an identity on image data).
AugmentSpec parse_spec(std::string_view text);

/// Knobs shared by every pipeline run.
struct AugmentParams {
    double theta_max = 0.01;      // rotation strength bound, radians
    double gn_sigma = 1.0;        // noise stddev in native pixel units
    double cr_bound_deg = 35.0;   // random rotation bound, degrees
    double crop_enlarge = 1.15;   // resize ratio before the center crop
    std::size_t crop_rows = 0;    // crop output size; 0 keeps the input size
    std::size_t crop_cols = 0;
    std::uint64_t seed = 0;       // default seed when the caller passes none
};

/// Add Normal(0, sigma^2) per pixel in the image's native value scale.
/// Channel c draws from mix_seed(seed, c), so channels are independent
/// streams and adding channels never perturbs earlier ones.
ImageBuffer gaussian_noise(const ImageBuffer& img, double sigma, std::uint64_t seed);

/// Mirror left-right (columns reversed in every channel).
ImageBuffer flip_h(const ImageBuffer& img);

/// Exact 90k-degree counterclockwise rotation by index permutation; k taken
/// mod 4, never interpolates.
ImageBuffer perfect_rotation(const ImageBuffer& img, int k);

/// Rotate the pixel grid by `angle_deg` counterclockwise about the image
/// center, bilinear interpolation, zero fill outside the frame. Dimensions
/// are unchanged. Matches perfect_rotation on multiples of 90 degrees.
ImageBuffer classical_rotation(const ImageBuffer& img, double angle_deg);

/// Bilinear resize by `enlarge`, then the centered (out_rows x out_cols)
/// window. Pass 0 for either output dimension to keep the input size.
ImageBuffer center_crop(const ImageBuffer& img, double enlarge, std::size_t out_rows = 0,
                        std::size_t out_cols = 0);

/// Elementwise real part, then extract back to the source shape.
RealGrid project_real(const AmplitudeState& state);

/// Elementwise modulus, then extract. All outputs are >= 0.
RealGrid project_abs(const AmplitudeState& state);

/// Affine remap of `augmented` onto `original`'s value range: 0-1 normalize
/// by the augmented min/max, then rescale to [min(orig), max(orig)]. Pixels
/// attaining the augmented extremes map to the original extremes exactly.
/// A constant augmented channel comes back as constant min(orig) and sets
/// *degenerate when provided.
RealGrid minmax_renormalize(const RealGrid& augmented, const RealGrid& original,
                            bool* degenerate = nullptr);

/// Bilinear resampling to an arbitrary size (half-pixel-center convention,
/// edge clamped). Shared by center_crop and the analysis preprocessing.
RealGrid resize_bilinear(const RealGrid& src, std::size_t out_rows, std::size_t out_cols);

struct PipelineOptions {
    /// Apply min-max renormalization against the pre-rotation channel after
    /// each QR subtree. On by default; spectrum analysis of raw rotated
    /// values turns it off.
    bool renormalize = true;
};

/// Execute the pipeline innermost-first.
///
/// QR nodes embed each channel, apply a freshly sampled plan (theta_max and
/// per-node seed from `params`/`seed`), then project if the node is wrapped
/// by real()/abs(); unprojected QR output splits into adjacent (real,
/// imaginary) channel pairs. Each plane produced by a QR subtree is
/// renormalized against its pre-rotation channel.
///
/// Randomness: every operator node gets an execution-ordered index
/// (innermost = 0) and draws from pipeline_node_seed(seed, index). Geometric
/// draws (PR's k, CR's angle) are shared across channels; noise and rotation
/// plans split the node stream further per channel via mix_seed(node_seed,
/// channel). Wrapping a pipeline in further operators never changes the
/// draws of the inner nodes.
ImageBuffer run_pipeline(const ImageBuffer& img, const AugmentSpec& spec,
                         const AugmentParams& params, std::uint64_t seed,
                         const PipelineOptions& options = {});

/// Seed stream for the operator node at `index` (execution order).
std::uint64_t pipeline_node_seed(std::uint64_t seed, int node_index);

}  // namespace qia
