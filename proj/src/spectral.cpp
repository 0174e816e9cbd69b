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

#include "qia/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qia/errors.hpp"
#include "qia/rng.hpp"

namespace qia {

namespace {

template <typename Matrix>
std::vector<double> svd_values(const Matrix& m) {
    Eigen::VectorXd sv;
    if (std::min(m.rows(), m.cols()) <= 16) {
        Eigen::JacobiSVD<Matrix> svd(m);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Matrix> svd(m);
        sv = svd.singularValues();
    }
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

Eigen::MatrixXd to_eigen(const RealGrid& g) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(g.rows), static_cast<Eigen::Index>(g.cols));
    for (std::size_t r = 0; r < g.rows; ++r) {
        for (std::size_t c = 0; c < g.cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g.at(r, c);
        }
    }
    return m;
}

Eigen::MatrixXcd to_eigen(const ComplexGrid& g) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(g.rows), static_cast<Eigen::Index>(g.cols));
    for (std::size_t r = 0; r < g.rows; ++r) {
        for (std::size_t c = 0; c < g.cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g.at(r, c);
        }
    }
    return m;
}

}  // namespace

std::vector<double> singular_values(const RealGrid& channel) {
    return svd_values(to_eigen(channel));
}

std::vector<double> singular_values(const ComplexGrid& channel) {
    return svd_values(to_eigen(channel));
}

std::vector<double> schmidt_coefficients(const AmplitudeState& state, int cut) {
    const int n = state.n_qubits;
    if (cut < 1 || cut >= n) {
        throw InvalidInputError("bipartition cut must lie strictly inside the register");
    }
    const std::size_t rows = std::size_t{1} << cut;
    const std::size_t cols = std::size_t{1} << (n - cut);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                state.amplitudes[r * cols + c];
        }
    }
    return svd_values(m);
}

SpectrumReport spectrum_diff(SpectrumReport augmented, const SpectrumReport& baseline) {
    if (augmented.values.size() != baseline.values.size()) {
        throw InvalidInputError("spectrum lengths differ");
    }
    augmented.diff_vs_baseline.resize(augmented.values.size());
    for (std::size_t i = 0; i < augmented.values.size(); ++i) {
        augmented.diff_vs_baseline[i] = augmented.values[i] - baseline.values[i];
    }
    return augmented;
}

RealGrid to_grayscale(const ImageBuffer& img) {
    img.require_consistent();
    if (img.channels.size() == 1) return img.channels.front();
    RealGrid gray(img.rows(), img.cols());
    const double inv = 1.0 / static_cast<double>(img.channels.size());
    for (const auto& ch : img.channels) {
        for (std::size_t i = 0; i < gray.data.size(); ++i) {
            gray.data[i] += ch.data[i];
        }
    }
    for (double& v : gray.data) v *= inv;
    return gray;
}

ImageBuffer prepare_for_analysis(const ImageBuffer& img, std::size_t target) {
    if (target == 0 || (target & (target - 1)) != 0) {
        throw InvalidInputError("analysis size must be a power of two");
    }
    RealGrid gray = to_grayscale(img);
    if (gray.rows != target || gray.cols != target) {
        gray = resize_bilinear(gray, target, target);
    }
    return ImageBuffer(std::move(gray));
}

namespace {

// Clamp to [0, 255] and round half away from zero, the 8-bit write policy.
void quantize_uint8(RealGrid& g) {
    for (double& v : g.data) {
        const double clamped = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
        v = std::round(clamped);
    }
}

std::vector<double> spectrum_of_output(const ImageBuffer& out, bool complex_pairs,
                                       bool convert_uint8) {
    if (!complex_pairs) {
        RealGrid g = to_grayscale(out);  // single-channel throughout analysis
        if (convert_uint8) quantize_uint8(g);
        return singular_values(g);
    }
    // Plane pairs re-assemble into one complex matrix per input channel.
    if (out.channels.size() % 2 != 0) {
        throw InvalidInputError("complex pipeline output must have plane pairs");
    }
    RealGrid re = out.channels[0];
    RealGrid im = out.channels[1];
    if (convert_uint8) {
        quantize_uint8(re);
        quantize_uint8(im);
    }
    ComplexGrid g(re.rows, re.cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.data[i] = c64(re.data[i], im.data[i]);
    }
    return singular_values(g);
}

}  // namespace

SpectrumReport average_spectra(const std::vector<ImageBuffer>& corpus, const AugmentSpec& spec,
                               int count, const AugmentParams& params, std::uint64_t seed,
                               bool convert_uint8) {
    if (count < 1 || corpus.size() < static_cast<std::size_t>(count)) {
        throw InvalidInputError("corpus smaller than the requested image count");
    }
    PipelineOptions options;
    options.renormalize = convert_uint8;  // raw path analyses unnormalized rotations
    std::vector<double> mean_aug;
    std::vector<double> mean_base;
    for (int i = 0; i < count; ++i) {
        const ImageBuffer& img = corpus[static_cast<std::size_t>(i)];
        img.require_consistent();
        const ImageBuffer out =
            run_pipeline(img, spec, params, mix_seed(seed, static_cast<std::uint64_t>(i)), options);
        std::vector<double> aug =
            spectrum_of_output(out, spec.has_unprojected_qr(), convert_uint8);
        std::vector<double> base = singular_values(to_grayscale(img));
        if (aug.size() != base.size()) {
            throw InvalidInputError("augmented and baseline spectra differ in length");
        }
        if (mean_aug.empty()) {
            mean_aug.assign(aug.size(), 0.0);
            mean_base.assign(base.size(), 0.0);
        }
        if (aug.size() != mean_aug.size()) {
            throw InvalidInputError("corpus images must share one analysis size");
        }
        for (std::size_t k = 0; k < aug.size(); ++k) {
            mean_aug[k] += aug[k];
            mean_base[k] += base[k];
        }
    }
    const double inv = 1.0 / static_cast<double>(count);
    SpectrumReport report;
    report.values = std::move(mean_aug);
    report.diff_vs_baseline.resize(report.values.size());
    for (std::size_t k = 0; k < report.values.size(); ++k) {
        report.values[k] *= inv;
        report.diff_vs_baseline[k] = report.values[k] - mean_base[k] * inv;
    }
    report.meta = {spec.text(), params.theta_max, seed, count, convert_uint8};
    return report;
}

std::pair<double, double> qrz_factor_stats(int n, double theta_max, int popcount_m) {
    if (n < 1 || popcount_m < 0 || popcount_m > n) {
        throw InvalidInputError("popcount must lie in [0, n]");
    }
    const double mu = static_cast<double>(n - 2 * popcount_m) * theta_max / 2.0;
    const double sigma2 = static_cast<double>(n) * theta_max * theta_max / 12.0;
    return {mu, sigma2};
}

namespace {

double normal_cdf(double x, double mu, double sigma) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * 1.4142135623730951));
}

}  // namespace

GaussianApproxReport gaussian_approx_check(int n, double theta_max, int samples,
                                           std::uint64_t seed) {
    if (n < 1 || samples < 10) {
        throw InvalidInputError("need n >= 1 and a sensible sample count");
    }
    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        const RotationPlan plan = sample_plan(n, AxesMode::ZOnly, theta_max,
                                              mix_seed(seed, static_cast<std::uint64_t>(s)));
        double total = 0.0;
        for (const auto& tuple : plan.per_qubit) total += tuple.front().angle;
        sums.push_back(total);
    }
    std::sort(sums.begin(), sums.end());
    const auto [mu, sigma2] = qrz_factor_stats(n, theta_max, 0);
    const double sigma = std::sqrt(sigma2);
    double dist = 0.0;
    const auto count = static_cast<double>(samples);
    for (std::size_t i = 0; i < sums.size(); ++i) {
        const double cdf = normal_cdf(sums[i], mu, sigma);
        const double hi = (static_cast<double>(i) + 1.0) / count - cdf;
        const double lo = cdf - static_cast<double>(i) / count;
        dist = std::max(dist, std::max(std::abs(hi), std::abs(lo)));
    }
    GaussianApproxReport report;
    report.n = n;
    report.samples = samples;
    report.ks_distance = dist;
    report.pass = dist < 0.02;
    return report;
}

std::string spectrum_to_csv(const SpectrumReport& report) {
    std::ostringstream out;
    out.precision(17);
    const bool with_diff = !report.diff_vs_baseline.empty();
    out << (with_diff ? "index,value,diff\n" : "index,value\n");
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        out << i << ',' << report.values[i];
        if (with_diff) out << ',' << report.diff_vs_baseline[i];
        out << '\n';
    }
    return out.str();
}

std::string spectrum_to_json(const SpectrumReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "{\"spec\":\"" << report.meta.spec_text << "\",\"theta_max\":" << report.meta.theta_max
        << ",\"seed\":" << report.meta.seed << ",\"corpus_size\":" << report.meta.corpus_size
        << ",\"convert_uint8\":" << (report.meta.convert_uint8 ? "true" : "false")
        << ",\"values\":[";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        if (i) out << ',';
        out << report.values[i];
    }
    out << "]";
    if (!report.diff_vs_baseline.empty()) {
        out << ",\"diff_vs_baseline\":[";
        for (std::size_t i = 0; i < report.diff_vs_baseline.size(); ++i) {
            if (i) out << ',';
            out << report.diff_vs_baseline[i];
        }
        out << "]";
    }
    out << "}";
    return out.str();
}

}  // namespace qia
