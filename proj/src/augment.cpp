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

#include "qia/augment.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "qia/rng.hpp"

namespace qia {

namespace {

bool is_qr(OpKind k) {
    return k == OpKind::QrX || k == OpKind::QrY || k == OpKind::QrZ || k == OpKind::QrXyz;
}

bool is_projection(OpKind k) { return k == OpKind::Real || k == OpKind::Abs; }

const std::unordered_map<std::string, OpKind>& op_names() {
    static const std::unordered_map<std::string, OpKind> table = {
        {"GN", OpKind::GaussianNoise}, {"F", OpKind::FlipH},
        {"PR", OpKind::PerfectRotation}, {"CR", OpKind::ClassicalRotation},
        {"C", OpKind::CenterCrop},     {"QR_X", OpKind::QrX},
        {"QR_Y", OpKind::QrY},         {"QR_Z", OpKind::QrZ},
        {"QR_XYZ", OpKind::QrXyz},     {"real", OpKind::Real},
        {"abs", OpKind::Abs},
    };
    return table;
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string_view read_ident() {
        const std::size_t start = pos;
        auto ident_char = [](char ch) {
            return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
        };
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    std::unique_ptr<SpecNode> parse_expr() {
        skip_ws();
        const std::size_t at = pos;
        const std::string_view ident = read_ident();
        if (ident.empty()) {
            throw ParseError("expected an operator name or 'x'", at);
        }
        auto node = std::make_unique<SpecNode>();
        node->src_offset = at;
        if (ident == "x") {
            node->kind = OpKind::Input;
            return node;
        }
        const auto it = op_names().find(std::string(ident));
        if (it == op_names().end()) {
            throw ParseError("unknown operator '" + std::string(ident) + "'", at);
        }
        node->kind = it->second;
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') {
            throw ParseError("expected '(' after '" + std::string(ident) + "'", pos);
        }
        ++pos;
        node->child = parse_expr();
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') {
            throw ParseError("expected ')'", pos);
        }
        ++pos;
        return node;
    }
};

// Returns whether the subtree contains a QR operator; checks the projection
// placement rules on the way up.
bool validate(const SpecNode& node) {
    const bool child_has_qr = node.child ? validate(*node.child) : false;
    if (is_projection(node.kind)) {
        if (!child_has_qr) {
            throw ParseError("real()/abs() without a quantum rotation underneath is the identity",
                             node.src_offset);
        }
        if (node.kind == OpKind::Abs && node.child->kind == OpKind::QrZ) {
            throw ParseError("abs() of a Z-only rotation is the identity on image data",
                             node.src_offset);
        }
    }
    return child_has_qr || is_qr(node.kind);
}

bool any_unprojected_qr(const SpecNode& node, bool projected_parent) {
    if (is_qr(node.kind) && !projected_parent) return true;
    if (!node.child) return false;
    return any_unprojected_qr(*node.child, is_projection(node.kind));
}

}  // namespace

AugmentSpec parse_spec(std::string_view text) {
    Parser parser{text};
    std::unique_ptr<SpecNode> root = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) {
        throw ParseError("unexpected trailing input", parser.pos);
    }
    validate(*root);
    AugmentSpec spec;
    spec.unprojected_qr_ = any_unprojected_qr(*root, false);
    spec.root_ = std::shared_ptr<const SpecNode>(std::move(root));
    spec.text_ = std::string(text);
    return spec;
}

std::uint64_t pipeline_node_seed(std::uint64_t seed, int node_index) {
    return mix_seed(seed, static_cast<std::uint64_t>(node_index));
}

ImageBuffer gaussian_noise(const ImageBuffer& img, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) {
        throw InvalidInputError("noise sigma must be non-negative");
    }
    img.require_consistent();
    ImageBuffer out = img;
    if (sigma == 0.0) return out;
    for (std::size_t c = 0; c < out.channels.size(); ++c) {
        Rng rng(mix_seed(seed, c));
        for (double& v : out.channels[c].data) {
            v += rng.normal(0.0, sigma);
        }
    }
    return out;
}

ImageBuffer flip_h(const ImageBuffer& img) {
    img.require_consistent();
    ImageBuffer out = img;
    for (auto& ch : out.channels) {
        for (std::size_t r = 0; r < ch.rows; ++r) {
            for (std::size_t c = 0; c < ch.cols / 2; ++c) {
                std::swap(ch.at(r, c), ch.at(r, ch.cols - 1 - c));
            }
        }
    }
    return out;
}

ImageBuffer perfect_rotation(const ImageBuffer& img, int k) {
    img.require_consistent();
    const int q = ((k % 4) + 4) % 4;
    if (q == 0) return img;
    ImageBuffer out;
    out.channels.reserve(img.channels.size());
    for (const auto& ch : img.channels) {
        const std::size_t rows = ch.rows, cols = ch.cols;
        RealGrid dst(q == 2 ? rows : cols, q == 2 ? cols : rows);
        for (std::size_t r = 0; r < dst.rows; ++r) {
            for (std::size_t c = 0; c < dst.cols; ++c) {
                double v;
                if (q == 1) {
                    v = ch.at(c, cols - 1 - r);  // counterclockwise quarter turn
                } else if (q == 2) {
                    v = ch.at(rows - 1 - r, cols - 1 - c);
                } else {
                    v = ch.at(rows - 1 - c, r);
                }
                dst.at(r, c) = v;
            }
        }
        out.channels.push_back(std::move(dst));
    }
    return out;
}

namespace {

// Bilinear read with zero outside the frame.
double sample_zero_fill(const RealGrid& g, double row, double col) {
    const double r0f = std::floor(row);
    const double c0f = std::floor(col);
    const auto rows = static_cast<long long>(g.rows);
    const auto cols = static_cast<long long>(g.cols);
    const auto r0 = static_cast<long long>(r0f);
    const auto c0 = static_cast<long long>(c0f);
    const double fr = row - r0f;
    const double fc = col - c0f;
    auto read = [&](long long r, long long c) -> double {
        if (r < 0 || c < 0 || r >= rows || c >= cols) return 0.0;
        return g.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    };
    return (1.0 - fr) * ((1.0 - fc) * read(r0, c0) + fc * read(r0, c0 + 1)) +
           fr * ((1.0 - fc) * read(r0 + 1, c0) + fc * read(r0 + 1, c0 + 1));
}

}  // namespace

ImageBuffer classical_rotation(const ImageBuffer& img, double angle_deg) {
    if (!std::isfinite(angle_deg)) {
        throw InvalidInputError("rotation angle must be finite");
    }
    img.require_consistent();
    const double theta = angle_deg * 0.017453292519943295;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    ImageBuffer out = img;
    const double cy = (static_cast<double>(img.rows()) - 1.0) / 2.0;
    const double cx = (static_cast<double>(img.cols()) - 1.0) / 2.0;
    for (std::size_t i = 0; i < img.channels.size(); ++i) {
        const RealGrid& src = img.channels[i];
        RealGrid& dst = out.channels[i];
        for (std::size_t r = 0; r < src.rows; ++r) {
            const double dy = static_cast<double>(r) - cy;
            for (std::size_t c = 0; c < src.cols; ++c) {
                const double dx = static_cast<double>(c) - cx;
                // Inverse map of a counterclockwise content rotation.
                const double src_col = ct * dx - st * dy + cx;
                const double src_row = st * dx + ct * dy + cy;
                dst.at(r, c) = sample_zero_fill(src, src_row, src_col);
            }
        }
    }
    return out;
}

RealGrid resize_bilinear(const RealGrid& src, std::size_t out_rows, std::size_t out_cols) {
    if (out_rows == 0 || out_cols == 0 || src.size() == 0) {
        throw InvalidInputError("resize dimensions must be positive");
    }
    RealGrid dst(out_rows, out_cols);
    const double row_scale = static_cast<double>(src.rows) / static_cast<double>(out_rows);
    const double col_scale = static_cast<double>(src.cols) / static_cast<double>(out_cols);
    auto clampd = [](double v, double hi) { return v < 0.0 ? 0.0 : (v > hi ? hi : v); };
    for (std::size_t r = 0; r < out_rows; ++r) {
        // Half-pixel centers, edges replicated.
        const double sr = clampd((static_cast<double>(r) + 0.5) * row_scale - 0.5,
                                 static_cast<double>(src.rows - 1));
        const auto r0 = static_cast<std::size_t>(sr);
        const std::size_t r1 = r0 + 1 < src.rows ? r0 + 1 : r0;
        const double fr = sr - static_cast<double>(r0);
        for (std::size_t c = 0; c < out_cols; ++c) {
            const double sc = clampd((static_cast<double>(c) + 0.5) * col_scale - 0.5,
                                     static_cast<double>(src.cols - 1));
            const auto c0 = static_cast<std::size_t>(sc);
            const std::size_t c1 = c0 + 1 < src.cols ? c0 + 1 : c0;
            const double fc = sc - static_cast<double>(c0);
            dst.at(r, c) = (1.0 - fr) * ((1.0 - fc) * src.at(r0, c0) + fc * src.at(r0, c1)) +
                           fr * ((1.0 - fc) * src.at(r1, c0) + fc * src.at(r1, c1));
        }
    }
    return dst;
}

ImageBuffer center_crop(const ImageBuffer& img, double enlarge, std::size_t out_rows,
                        std::size_t out_cols) {
    img.require_consistent();
    if (!(enlarge > 1.0)) {
        throw InvalidInputError("crop enlargement ratio must exceed 1");
    }
    if (out_rows == 0) out_rows = img.rows();
    if (out_cols == 0) out_cols = img.cols();
    const auto big_rows =
        static_cast<std::size_t>(std::llround(static_cast<double>(img.rows()) * enlarge));
    const auto big_cols =
        static_cast<std::size_t>(std::llround(static_cast<double>(img.cols()) * enlarge));
    if (out_rows > big_rows || out_cols > big_cols) {
        throw InvalidInputError("crop window exceeds the enlarged image");
    }
    const std::size_t r0 = (big_rows - out_rows) / 2;
    const std::size_t c0 = (big_cols - out_cols) / 2;
    ImageBuffer out;
    out.channels.reserve(img.channels.size());
    for (const auto& ch : img.channels) {
        const RealGrid big = resize_bilinear(ch, big_rows, big_cols);
        RealGrid window(out_rows, out_cols);
        for (std::size_t r = 0; r < out_rows; ++r) {
            for (std::size_t c = 0; c < out_cols; ++c) {
                window.at(r, c) = big.at(r0 + r, c0 + c);
            }
        }
        out.channels.push_back(std::move(window));
    }
    return out;
}

RealGrid project_real(const AmplitudeState& state) {
    const ComplexGrid g = extract(state);
    RealGrid out(g.rows, g.cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.data[i] = g.data[i].real();
    }
    return out;
}

RealGrid project_abs(const AmplitudeState& state) {
    const ComplexGrid g = extract(state);
    RealGrid out(g.rows, g.cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.data[i] = std::abs(g.data[i]);
    }
    return out;
}

RealGrid minmax_renormalize(const RealGrid& augmented, const RealGrid& original,
                            bool* degenerate) {
    if (augmented.size() == 0 || original.size() == 0) {
        throw InvalidInputError("renormalization needs non-empty inputs");
    }
    const auto [lo_a, hi_a] = augmented.value_range();
    const auto [lo_o, hi_o] = original.value_range();
    if (lo_o == hi_o) {
        throw InvalidInputError("original channel is constant, its range is undefined");
    }
    if (degenerate != nullptr) *degenerate = false;
    if (lo_a == lo_o && hi_a == hi_o) {
        return augmented;  // the affine map is the identity
    }
    RealGrid out(augmented.rows, augmented.cols);
    if (lo_a == hi_a) {
        if (degenerate != nullptr) *degenerate = true;
        for (double& v : out.data) v = lo_o;
        return out;
    }
    const double span_a = hi_a - lo_a;
    const double span_o = hi_o - lo_o;
    for (std::size_t i = 0; i < augmented.data.size(); ++i) {
        const double v = augmented.data[i];
        double mapped;
        if (v == lo_a) {
            mapped = lo_o;  // extremes land exactly on the target range
        } else if (v == hi_a) {
            mapped = hi_o;
        } else {
            mapped = (v - lo_a) / span_a * span_o + lo_o;
            mapped = mapped < lo_o ? lo_o : (mapped > hi_o ? hi_o : mapped);
        }
        out.data[i] = mapped;
    }
    return out;
}

namespace {

struct EvalContext {
    const ImageBuffer& input;
    const AugmentParams& params;
    std::uint64_t seed;
    bool renormalize;
    int next_index = 0;
};

ImageBuffer eval_node(const SpecNode& node, EvalContext& ctx);

AxesMode qr_mode(OpKind k) {
    switch (k) {
        case OpKind::QrX: return AxesMode::XOnly;
        case OpKind::QrY: return AxesMode::YOnly;
        case OpKind::QrZ: return AxesMode::ZOnly;
        default: return AxesMode::Xyz;
    }
}

// Rotate every channel; project when a real()/abs() wrapper asked for it,
// otherwise split into (real, imaginary) plane pairs. Each produced plane is
// renormalized against the channel that entered the rotation.
ImageBuffer eval_qr(const SpecNode& qr, OpKind projection, EvalContext& ctx) {
    const ImageBuffer pre = eval_node(*qr.child, ctx);
    pre.require_consistent();
    const int node_index = ctx.next_index++;
    const std::uint64_t node_seed = pipeline_node_seed(ctx.seed, node_index);
    const AxesMode mode = qr_mode(qr.kind);

    ImageBuffer out;
    for (std::size_t c = 0; c < pre.channels.size(); ++c) {
        const RealGrid& channel = pre.channels[c];
        AmplitudeState state = embed(channel);
        const std::uint64_t plan_seed = mix_seed(node_seed, c);
        if (mode == AxesMode::ZOnly) {
            const RotationPlan plan =
                sample_plan(state.n_qubits, mode, ctx.params.theta_max, plan_seed);
            std::vector<double> angles;
            angles.reserve(plan.per_qubit.size());
            for (const auto& tuple : plan.per_qubit) angles.push_back(tuple.front().angle);
            state = apply_qrz_fast(std::move(state), angles);
        } else {
            state = apply_plan(std::move(state),
                               sample_plan(state.n_qubits, mode, ctx.params.theta_max, plan_seed));
        }

        auto finish = [&](RealGrid plane) {
            out.channels.push_back(ctx.renormalize ? minmax_renormalize(plane, channel)
                                                   : std::move(plane));
        };
        if (projection == OpKind::Real) {
            finish(project_real(state));
        } else if (projection == OpKind::Abs) {
            finish(project_abs(state));
        } else {
            const ComplexGrid g = extract(state);
            RealGrid re(g.rows, g.cols), im(g.rows, g.cols);
            for (std::size_t i = 0; i < g.size(); ++i) {
                re.data[i] = g.data[i].real();
                im.data[i] = g.data[i].imag();
            }
            finish(std::move(re));
            finish(std::move(im));
        }
    }
    return out;
}

ImageBuffer eval_node(const SpecNode& node, EvalContext& ctx) {
    switch (node.kind) {
        case OpKind::Input:
            return ctx.input;
        case OpKind::Real:
        case OpKind::Abs: {
            if (is_qr(node.child->kind)) {
                ImageBuffer out = eval_qr(*node.child, node.kind, ctx);
                ctx.next_index++;  // the projection's own slot
                return out;
            }
            // Projection of data that is already real: real() is the
            // identity, abs() the elementwise modulus.
            ImageBuffer img = eval_node(*node.child, ctx);
            ctx.next_index++;
            if (node.kind == OpKind::Abs) {
                for (auto& ch : img.channels) {
                    for (double& v : ch.data) v = std::abs(v);
                }
            }
            return img;
        }
        case OpKind::QrX:
        case OpKind::QrY:
        case OpKind::QrZ:
        case OpKind::QrXyz:
            return eval_qr(node, OpKind::Input, ctx);
        case OpKind::GaussianNoise: {
            ImageBuffer img = eval_node(*node.child, ctx);
            const int idx = ctx.next_index++;
            return gaussian_noise(img, ctx.params.gn_sigma, pipeline_node_seed(ctx.seed, idx));
        }
        case OpKind::FlipH: {
            ImageBuffer img = eval_node(*node.child, ctx);
            ctx.next_index++;
            return flip_h(img);
        }
        case OpKind::PerfectRotation: {
            ImageBuffer img = eval_node(*node.child, ctx);
            const int idx = ctx.next_index++;
            Rng rng(pipeline_node_seed(ctx.seed, idx));
            return perfect_rotation(img, static_cast<int>(rng.uniform_index(4)));
        }
        case OpKind::ClassicalRotation: {
            ImageBuffer img = eval_node(*node.child, ctx);
            const int idx = ctx.next_index++;
            Rng rng(pipeline_node_seed(ctx.seed, idx));
            const double bound = ctx.params.cr_bound_deg;
            return classical_rotation(img, rng.uniform(-bound, bound));
        }
        case OpKind::CenterCrop: {
            ImageBuffer img = eval_node(*node.child, ctx);
            ctx.next_index++;
            return center_crop(img, ctx.params.crop_enlarge, ctx.params.crop_rows,
                               ctx.params.crop_cols);
        }
    }
    throw InvalidInputError("unreachable pipeline node");
}

}  // namespace

ImageBuffer run_pipeline(const ImageBuffer& img, const AugmentSpec& spec,
                         const AugmentParams& params, std::uint64_t seed,
                         const PipelineOptions& options) {
    img.require_consistent();
    EvalContext ctx{img, params, seed, options.renormalize};
    return eval_node(spec.root(), ctx);
}

}  // namespace qia
