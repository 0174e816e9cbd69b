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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "qia/augment.hpp"
#include "qia/errors.hpp"
#include "qia/qcore.hpp"
#include "qia/rng.hpp"
#include "qia/spectral.hpp"
#include "testutil.hpp"

using namespace qia;

TEST_CASE("singular_values on known matrices") {
    RealGrid eye(2, 2);
    eye.data = {1, 0, 0, 1};
    const auto sv_eye = singular_values(eye);
    REQUIRE(sv_eye.size() == 2);
    CHECK(sv_eye[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sv_eye[1] == doctest::Approx(1.0).epsilon(1e-12));

    RealGrid diag(2, 2);
    diag.data = {3, 0, 0, -4};
    const auto sv_diag = singular_values(diag);
    CHECK(sv_diag[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sv_diag[1] == doctest::Approx(3.0).epsilon(1e-12));

    // Rank-one outer product: one value, norm(u) * norm(v).
    Rng rng(55);
    std::vector<double> u(20), v(30);
    for (double& x : u) x = rng.uniform(-2, 2);
    for (double& x : v) x = rng.uniform(-2, 2);
    RealGrid outer(20, 30);
    for (std::size_t r = 0; r < 20; ++r) {
        for (std::size_t c = 0; c < 30; ++c) outer.at(r, c) = u[r] * v[c];
    }
    const double nu = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    const auto sv = singular_values(outer);
    REQUIRE(sv.size() == 20);
    CHECK(sv[0] == doctest::Approx(nu * nv).epsilon(1e-10));
    for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] < 1e-9 * sv[0]);
}

TEST_CASE("schmidt_coefficients agree with the image spectrum at the row cut") {
    const RealGrid img = test::random_grid(4, 4, 77);
    const AmplitudeState state = embed(img);
    const auto schmidt = schmidt_coefficients(state, 2);
    const auto direct = singular_values(img);
    CHECK(test::max_abs_diff(schmidt, direct) < 1e-12);

    CHECK_THROWS_AS(schmidt_coefficients(state, 0), InvalidInputError);
    CHECK_THROWS_AS(schmidt_coefficients(state, 4), InvalidInputError);
}

TEST_CASE("schmidt_coefficients are invariant under rotations") {
    Rng seeds(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 7;
        const AmplitudeState state = test::random_state(n, 100 + trial);
        const RotationPlan plan = sample_plan(n, AxesMode::Xyz, 1.7, 200 + trial);
        const int cut =
            1 + static_cast<int>(seeds.uniform_index(static_cast<std::uint64_t>(n - 1)));
        const auto before = schmidt_coefficients(state, cut);
        const auto after = schmidt_coefficients(apply_plan(state, plan), cut);
        CHECK(test::max_abs_diff(before, after) < 1e-10);
    }
}

TEST_CASE("spectrum_diff subtracts elementwise") {
    SpectrumReport a, b;
    a.values = {5, 3, 1};
    b.values = {5, 2, 2};
    const SpectrumReport d = spectrum_diff(a, b);
    CHECK(d.diff_vs_baseline == std::vector<double>{0, 1, -1});

    SpectrumReport short_report;
    short_report.values = {1};
    CHECK_THROWS_AS(spectrum_diff(short_report, b), InvalidInputError);

    const SpectrumReport zero = spectrum_diff(b, b);
    for (double v : zero.diff_vs_baseline) CHECK(v == 0.0);
}

TEST_CASE("scaling a channel scales every singular value") {
    const RealGrid img = test::random_grid(24, 24, 15);
    RealGrid scaled = img;
    for (double& v : scaled.data) v *= 3.5;
    const auto base = singular_values(img);
    const auto big = singular_values(scaled);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(big[i] == doctest::Approx(3.5 * base[i]).epsilon(1e-10));
    }
}

TEST_CASE("average_spectra with one image is the single spectrum") {
    const ImageBuffer img(test::random_grid(32, 32, 9, 0, 255));
    const std::vector<ImageBuffer> corpus = {img};
    AugmentParams params;
    const SpectrumReport report = average_spectra(corpus, parse_spec("x"), 1, params, 4, false);
    CHECK(test::max_abs_diff(report.values, singular_values(img.channels[0])) < 1e-12);
    for (double v : report.diff_vs_baseline) CHECK(v == 0.0);
    CHECK(report.meta.corpus_size == 1);

    CHECK_THROWS_AS(average_spectra(corpus, parse_spec("x"), 2, params, 4, false),
                    InvalidInputError);
}

TEST_CASE("uint8 conversion is the identity on integer baselines") {
    RealGrid ints = test::random_grid(16, 16, 10, 0, 255);
    for (double& v : ints.data) v = std::round(v);
    const std::vector<ImageBuffer> corpus = {ImageBuffer(ints)};
    AugmentParams params;
    const auto raw = average_spectra(corpus, parse_spec("x"), 1, params, 1, false);
    const auto quantized = average_spectra(corpus, parse_spec("x"), 1, params, 1, true);
    CHECK(test::max_abs_diff(raw.values, quantized.values) == 0.0);
}

TEST_CASE("projection-free rotations keep the averaged spectrum on the baseline") {
    std::vector<ImageBuffer> corpus;
    for (std::uint64_t i = 0; i < 3; ++i) {
        corpus.push_back(ImageBuffer(test::random_grid(32, 32, 700 + i, 0, 255)));
    }
    AugmentParams params;
    params.theta_max = 0.01;

    const auto raw = average_spectra(corpus, parse_spec("real(QR_Y(x))"), 3, params, 8, false);
    double worst_raw = 0.0;
    for (double v : raw.diff_vs_baseline) worst_raw = std::max(worst_raw, std::abs(v));
    CHECK(worst_raw < 1e-9);

    const auto eight_bit =
        average_spectra(corpus, parse_spec("real(QR_Y(x))"), 3, params, 8, true);
    double worst_q = 0.0;
    for (double v : eight_bit.diff_vs_baseline) worst_q = std::max(worst_q, std::abs(v));
    CHECK(worst_q > 1e-6);  // quantization breaks the exact overlap

    const auto complex_out = average_spectra(corpus, parse_spec("QR_XYZ(x)"), 3, params, 8, false);
    double worst_c = 0.0;
    for (double v : complex_out.diff_vs_baseline) worst_c = std::max(worst_c, std::abs(v));
    CHECK(worst_c < 1e-9);
}

TEST_CASE("flip and quarter-turn pipelines sit on the baseline") {
    std::vector<ImageBuffer> corpus;
    for (std::uint64_t i = 0; i < 4; ++i) {
        corpus.push_back(ImageBuffer(test::random_grid(32, 32, 50 + i, 0, 255)));
    }
    AugmentParams params;
    const auto report = average_spectra(corpus, parse_spec("F(PR(x))"), 4, params, 2, false);
    double worst = 0.0;
    for (double v : report.diff_vs_baseline) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-10);
}

TEST_CASE("qrz_factor_stats closed forms") {
    const auto [mu0, var0] = qrz_factor_stats(16, 0.01, 0);
    CHECK(mu0 == doctest::Approx(0.08).epsilon(1e-15));
    CHECK(var0 == doctest::Approx(16 * 0.01 * 0.01 / 12.0).epsilon(1e-15));

    const auto [mu_half, var_half] = qrz_factor_stats(10, 0.3, 5);
    CHECK(mu_half == 0.0);
    CHECK(var_half == doctest::Approx(10 * 0.09 / 12.0).epsilon(1e-15));

    CHECK_THROWS_AS(qrz_factor_stats(4, 0.1, 5), InvalidInputError);
}

TEST_CASE("sampled angle sums match the closed-form moments") {
    // Monte Carlo over sampled plans at a register address with m set bits.
    const int n = 16, m = 5, trials = 30000;
    const double theta = 0.01;
    double mean = 0.0, sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const RotationPlan plan =
            sample_plan(n, AxesMode::ZOnly, theta, mix_seed(777, static_cast<std::uint64_t>(t)));
        double sum = 0.0;
        for (int q = 0; q < n; ++q) {
            const double a = plan.per_qubit[static_cast<std::size_t>(q)].front().angle;
            sum += q < m ? -a : a;  // address with m low bits set
        }
        mean += sum;
        sq += sum * sum;
    }
    mean /= trials;
    const double var = sq / trials - mean * mean;
    const auto [mu, sigma2] = qrz_factor_stats(n, theta, m);
    const double se = std::sqrt(sigma2 / trials);
    CHECK(std::abs(mean - mu) < 3 * se);
    CHECK(std::abs(var - sigma2) < 0.05 * sigma2);
}

TEST_CASE("gaussian approximation holds for wide registers only") {
    const auto wide = gaussian_approx_check(16, 0.01, 40000, 5);
    CHECK(wide.pass);
    CHECK(wide.ks_distance < 0.02);

    const auto narrow = gaussian_approx_check(1, 0.01, 40000, 5);
    CHECK_FALSE(narrow.pass);
    CHECK(narrow.ks_distance > 0.02);

    const auto pair = gaussian_approx_check(2, 0.01, 40000, 5);
    CHECK(pair.ks_distance < narrow.ks_distance);
    CHECK(pair.ks_distance > wide.ks_distance);
}

TEST_CASE("averaging smooths per-index variance") {
    std::vector<ImageBuffer> corpus;
    for (std::uint64_t i = 0; i < 30; ++i) {
        corpus.push_back(ImageBuffer(test::random_grid(32, 32, 4000 + i, 0, 255)));
    }
    AugmentParams params;
    params.gn_sigma = 1.0;
    const AugmentSpec spec = parse_spec("GN(x)");

    auto index_variance = [](const std::vector<double>& v, std::size_t lo, std::size_t hi) {
        double mean = 0.0;
        for (std::size_t i = lo; i < hi; ++i) mean += v[i];
        mean /= static_cast<double>(hi - lo);
        double var = 0.0;
        for (std::size_t i = lo; i < hi; ++i) var += (v[i] - mean) * (v[i] - mean);
        return var / static_cast<double>(hi - lo);
    };

    const SpectrumReport avg = average_spectra(corpus, spec, 30, params, 6, false);
    double mean_single_var = 0.0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        const std::vector<ImageBuffer> one = {corpus[i]};
        const SpectrumReport single = average_spectra(one, spec, 1, params, mix_seed(6, i), false);
        mean_single_var += index_variance(single.values, 4, 28);
    }
    mean_single_var /= 30.0;
    CHECK(index_variance(avg.values, 4, 28) < mean_single_var);
}

TEST_CASE("reports serialize to csv and json") {
    SpectrumReport report;
    report.values = {2.5, 1.25};
    report.diff_vs_baseline = {0.5, -0.25};
    report.meta = {"GN(x)", 0.01, 7, 1, true};
    const std::string csv = spectrum_to_csv(report);
    CHECK(csv.find("index,value,diff") == 0);
    CHECK(csv.find("0,2.5,0.5") != std::string::npos);
    CHECK(csv.find("1,1.25,-0.25") != std::string::npos);

    const std::string json = spectrum_to_json(report);
    CHECK(json.find("\"spec\":\"GN(x)\"") != std::string::npos);
    CHECK(json.find("\"convert_uint8\":true") != std::string::npos);
    CHECK(json.find("\"values\":[2.5,1.25]") != std::string::npos);
    CHECK(json.find("\"diff_vs_baseline\":[0.5,-0.25]") != std::string::npos);
}
