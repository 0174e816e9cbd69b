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

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qia/augment.hpp"
#include "qia/errors.hpp"
#include "qia/image_io.hpp"
#include "qia/oracle.hpp"
#include "qia/privacy.hpp"
#include "qia/qcore.hpp"
#include "qia/rng.hpp"
#include "qia/spectral.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitResource = 3;

struct RunConfig {
    std::string spec = "x";
    qia::AugmentParams params;
    std::string input;
    std::string output;
    std::string format;  // empty keeps the input extension
    int count = 1;
    std::uint64_t seed = 0;
    bool convert_uint8 = false;
    bool resize_pow2 = false;
    std::size_t analysis_size = 256;
    int threads = 0;  // 0 picks the hardware count
    double epsilon = 1.0;
    double sensitivity = 255.0;
};

// Config file fields mirror RunConfig; explicitly passed CLI flags win.
void apply_config_file(const std::string& path, RunConfig& cfg,
                       const std::function<bool(const std::string&)>& flag_was_passed) {
    std::ifstream in(path);
    if (!in) {
        throw qia::IoError("cannot open config " + path);
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, true, true);
    auto load = [&](const char* key, auto& slot) {
        if (j.contains(key) && !flag_was_passed(key)) {
            slot = j.at(key).get<std::decay_t<decltype(slot)>>();
        }
    };
    load("spec", cfg.spec);
    load("theta_max", cfg.params.theta_max);
    load("gn_sigma", cfg.params.gn_sigma);
    load("cr_bound_deg", cfg.params.cr_bound_deg);
    load("crop_enlarge", cfg.params.crop_enlarge);
    load("crop_rows", cfg.params.crop_rows);
    load("crop_cols", cfg.params.crop_cols);
    load("input", cfg.input);
    load("output", cfg.output);
    load("format", cfg.format);
    load("count", cfg.count);
    load("seed", cfg.seed);
    load("uint8", cfg.convert_uint8);
    load("resize_pow2", cfg.resize_pow2);
    load("analysis_size", cfg.analysis_size);
    load("threads", cfg.threads);
    load("epsilon", cfg.epsilon);
    load("sensitivity", cfg.sensitivity);
}

std::vector<fs::path> collect_inputs(const std::string& input) {
    if (input.empty()) {
        throw qia::InvalidInputError("no input given");
    }
    const fs::path p(input);
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(p)) {
            if (entry.is_regular_file() && qia::is_image_file(entry.path())) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw qia::IoError("no images found in " + input);
        }
        return files;
    }
    if (!fs::exists(p)) {
        throw qia::IoError("input does not exist: " + input);
    }
    return {p};
}

std::string sanitize_spec(const std::string& spec) {
    std::string out;
    bool gap = false;
    for (char c : spec) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out.push_back(c);
            gap = false;
        } else if (!gap && !out.empty()) {
            out.push_back('_');
            gap = true;
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "spec" : out;
}

std::string pick_extension(const RunConfig& cfg, const fs::path& input) {
    if (!cfg.format.empty()) {
        if (cfg.format != "pgm" && cfg.format != "png" && cfg.format != "ppm") {
            throw qia::InvalidInputError("image commands write pgm/ppm/png, got '" + cfg.format +
                                         "'");
        }
        return "." + cfg.format;
    }
    return input.extension().string();
}

qia::ImageBuffer load_input(const fs::path& path, const RunConfig& cfg) {
    qia::ImageBuffer img = qia::read_image(path);
    if (cfg.resize_pow2) {
        auto next_pow2 = [](std::size_t v) {
            std::size_t p = 1;
            while (p < v) p <<= 1;
            return p;
        };
        const std::size_t rows = next_pow2(img.rows());
        const std::size_t cols = next_pow2(img.cols());
        if (rows != img.rows() || cols != img.cols()) {
            for (auto& ch : img.channels) {
                ch = qia::resize_bilinear(ch, rows, cols);
            }
        }
    }
    return img;
}

// Complex pipelines produce adjacent (re, im) channel pairs; peel them back
// into two images for the paired output files.
void write_outputs(const fs::path& base_no_ext, const std::string& ext,
                   const qia::ImageBuffer& out, bool complex_pairs) {
    if (!complex_pairs) {
        qia::write_image(fs::path(base_no_ext.string() + ext), out);
        return;
    }
    if (out.channels.size() % 2 != 0) {
        throw qia::InvalidInputError("complex output without plane pairs");
    }
    qia::ImageBuffer re, im;
    for (std::size_t c = 0; c < out.channels.size(); c += 2) {
        re.channels.push_back(out.channels[c]);
        im.channels.push_back(out.channels[c + 1]);
    }
    qia::write_image(fs::path(base_no_ext.string() + "_re" + ext), re);
    qia::write_image(fs::path(base_no_ext.string() + "_im" + ext), im);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, 16u);
    n_workers = std::min<std::size_t>(n_workers, count);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

fs::path ensure_output_dir(const std::string& output) {
    if (output.empty()) {
        throw qia::InvalidInputError("an output directory is required");
    }
    const fs::path dir(output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) {
        throw qia::IoError("cannot create output directory " + output);
    }
    return dir;
}

int cmd_augment(const RunConfig& cfg) {
    const qia::AugmentSpec spec = qia::parse_spec(cfg.spec);
    const std::vector<fs::path> inputs = collect_inputs(cfg.input);
    const fs::path out_dir = ensure_output_dir(cfg.output);
    const std::string tag = sanitize_spec(cfg.spec);

    parallel_for(inputs.size(), cfg.threads, [&](std::size_t i) {
        const qia::ImageBuffer img = load_input(inputs[i], cfg);
        const qia::ImageBuffer out =
            qia::run_pipeline(img, spec, cfg.params, qia::mix_seed(cfg.seed, i));
        const std::string ext = pick_extension(cfg, inputs[i]);
        const fs::path base = out_dir / (inputs[i].stem().string() + "__" + tag);
        write_outputs(base, ext, out, spec.has_unprojected_qr());
    });
    std::cout << "augmented " << inputs.size() << " image(s) -> " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg) {
    const qia::AugmentSpec spec = qia::parse_spec(cfg.spec);
    const std::vector<fs::path> inputs = collect_inputs(cfg.input);
    if (cfg.count < 1 || inputs.size() < static_cast<std::size_t>(cfg.count)) {
        throw qia::InvalidInputError("corpus has " + std::to_string(inputs.size()) +
                                     " images, need " + std::to_string(cfg.count));
    }
    std::vector<qia::ImageBuffer> corpus(static_cast<std::size_t>(cfg.count));
    parallel_for(corpus.size(), cfg.threads, [&](std::size_t i) {
        corpus[i] = qia::prepare_for_analysis(qia::read_image(inputs[i]), cfg.analysis_size);
    });
    const qia::SpectrumReport report = qia::average_spectra(corpus, spec, cfg.count, cfg.params,
                                                            cfg.seed, cfg.convert_uint8);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    std::string payload;
    if (format == "csv") {
        payload = qia::spectrum_to_csv(report);
    } else if (format == "json") {
        payload = qia::spectrum_to_json(report);
    } else {
        throw qia::InvalidInputError("spectrum reports are csv or json, got '" + format + "'");
    }
    if (cfg.output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) {
            throw qia::IoError("cannot write " + cfg.output);
        }
        out << payload;
    }
    return kExitOk;
}

double median_ms(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

template <typename Fn>
double time_once_ms(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

double fit_exponent(const std::vector<std::pair<double, double>>& n_vs_ms) {
    // Least squares slope of log(t) against log(N).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [ln_n, ln_t] : n_vs_ms) {
        sx += ln_n;
        sy += ln_t;
        sxx += ln_n * ln_n;
        sxy += ln_n * ln_t;
    }
    const double m = static_cast<double>(n_vs_ms.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

int cmd_bench(int min_qubits, int max_qubits, int reps, std::uint64_t seed) {
    if (min_qubits < 1 || max_qubits < min_qubits || max_qubits > 24) {
        throw qia::InvalidInputError("qubit range must satisfy 1 <= min <= max <= 24");
    }
    if (reps < 1) {
        throw qia::InvalidInputError("reps must be positive");
    }
    std::printf("%3s %10s %12s %12s %12s\n", "n", "N", "xyz_ms", "z_ms", "dense_ms");
    std::vector<std::pair<double, double>> fit_xyz, fit_z, fit_dense;
    for (int n = min_qubits; n <= max_qubits; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        qia::AmplitudeState state;
        state.n_qubits = n;
        state.source_rows = 1;
        state.source_cols = dim;
        state.amplitudes.resize(dim);
        qia::Rng rng(qia::mix_seed(seed, static_cast<std::uint64_t>(n)));
        for (auto& a : state.amplitudes) {
            a = qia::c64(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
        const qia::RotationPlan plan_xyz =
            qia::sample_plan(n, qia::AxesMode::Xyz, 0.01, qia::mix_seed(seed, 1, n));
        const qia::RotationPlan plan_z =
            qia::sample_plan(n, qia::AxesMode::ZOnly, 0.01, qia::mix_seed(seed, 2, n));
        std::vector<double> z_angles;
        for (const auto& tuple : plan_z.per_qubit) z_angles.push_back(tuple.front().angle);

        // Repeat tiny problems inside one timing so clock granularity does
        // not dominate.
        const int inner = static_cast<int>(std::max<std::size_t>(1, (std::size_t{1} << 20) / dim));
        std::vector<double> t_xyz, t_z, t_dense;
        for (int r = 0; r < reps; ++r) {
            t_xyz.push_back(time_once_ms([&] {
                                for (int k = 0; k < inner; ++k) {
                                    auto out = qia::apply_plan(state, plan_xyz);
                                    (void)out;
                                }
                            }) /
                            inner);
            t_z.push_back(time_once_ms([&] {
                              for (int k = 0; k < inner; ++k) {
                                  auto out = qia::apply_qrz_fast(state, z_angles);
                                  (void)out;
                              }
                          }) /
                          inner);
        }
        double dense_ms = -1.0;
        if (n <= 12) {
            const qia::DenseOperator op = qia::build_dense(plan_xyz);
            for (int r = 0; r < reps; ++r) {
                t_dense.push_back(time_once_ms([&] {
                                      for (int k = 0; k < inner; ++k) {
                                          auto out = qia::apply_dense(op, state);
                                          (void)out;
                                      }
                                  }) /
                                  inner);
            }
            dense_ms = median_ms(t_dense);
        }
        const double xyz_ms = median_ms(t_xyz);
        const double z_ms = median_ms(t_z);
        if (dense_ms >= 0) {
            std::printf("%3d %10zu %12.5f %12.5f %12.5f\n", n, dim, xyz_ms, z_ms, dense_ms);
        } else {
            std::printf("%3d %10zu %12.5f %12.5f %12s\n", n, dim, xyz_ms, z_ms, "-");
        }
        const double ln_n = std::log(static_cast<double>(dim));
        if (xyz_ms > 0) fit_xyz.push_back({ln_n, std::log(xyz_ms)});
        if (z_ms > 0) fit_z.push_back({ln_n, std::log(z_ms)});
        if (dense_ms > 0) fit_dense.push_back({ln_n, std::log(dense_ms)});
    }
    if (fit_xyz.size() >= 2) {
        std::printf("fitted exponent (t ~ N^a): xyz a=%.2f", fit_exponent(fit_xyz));
        if (fit_z.size() >= 2) std::printf(", z a=%.2f", fit_exponent(fit_z));
        if (fit_dense.size() >= 2) std::printf(", dense a=%.2f", fit_exponent(fit_dense));
        std::printf("\n");
    }
    return kExitOk;
}

int cmd_dp(const RunConfig& cfg) {
    const qia::AugmentSpec spec = qia::parse_spec(cfg.spec);
    const std::vector<fs::path> inputs = collect_inputs(cfg.input);
    const fs::path out_dir = ensure_output_dir(cfg.output);
    const std::string tag = "dp_" + sanitize_spec(cfg.spec);

    parallel_for(inputs.size(), cfg.threads, [&](std::size_t i) {
        const qia::ImageBuffer img = load_input(inputs[i], cfg);
        const std::uint64_t image_seed = qia::mix_seed(cfg.seed, i);
        qia::ImageBuffer staged = qia::run_pipeline(img, spec, cfg.params, image_seed);
        qia::DpParams dp;
        dp.epsilon = cfg.epsilon;
        dp.sensitivity = cfg.sensitivity;
        dp.seed = qia::mix_seed(image_seed, 97);
        staged = qia::dp_noise(staged, dp);
        const std::string ext = pick_extension(cfg, inputs[i]);
        const fs::path base = out_dir / (inputs[i].stem().string() + "__" + tag);
        write_outputs(base, ext, staged, spec.has_unprojected_qr());
    });
    std::cout << "noised " << inputs.size() << " image(s) -> " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_demo(const RunConfig& cfg) {
    static const std::vector<std::string> kMethods = {
        "x",
        "GN(x)",
        "F(PR(x))",
        "C(F(CR(x)))",
        "real(QR_Y(x))",
        "abs(QR_X(x))",
        "real(QR_Z(x))",
        "real(QR_XYZ(x))",
        "abs(QR_XYZ(x))",
        "QR_XYZ(x)",
        "real(QR_Z(GN(x)))",
        "real(QR_Z(F(PR(x))))",
        "real(QR_Z(C(F(CR(x)))))",
        "abs(QR_XYZ(C(F(CR(x)))))",
    };
    const std::vector<fs::path> inputs = collect_inputs(cfg.input);
    if (inputs.size() != 1) {
        throw qia::InvalidInputError("demo takes a single input image");
    }
    const fs::path out_dir = ensure_output_dir(cfg.output);
    const qia::ImageBuffer img = load_input(inputs[0], cfg);
    const std::string ext = pick_extension(cfg, inputs[0]);

    parallel_for(kMethods.size(), cfg.threads, [&](std::size_t m) {
        const qia::AugmentSpec spec = qia::parse_spec(kMethods[m]);
        const qia::ImageBuffer out =
            qia::run_pipeline(img, spec, cfg.params, qia::mix_seed(cfg.seed, m));
        char prefix[8];
        std::snprintf(prefix, sizeof prefix, "%02zu_", m);
        const fs::path base = out_dir / (prefix + sanitize_spec(kMethods[m]));
        write_outputs(base, ext, out, spec.has_unprojected_qr());
    });
    std::cout << "wrote " << kMethods.size() << " method outputs -> " << out_dir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-inspired image augmentation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    int min_qubits = 4, max_qubits = 20, reps = 5;

    std::vector<CLI::Option*> tracked;
    auto track = [&](CLI::Option* opt) {
        tracked.push_back(opt);
        return opt;
    };

    auto add_shared = [&](CLI::App* sub) {
        track(sub->add_option("--spec", cfg.spec, "augmentation pipeline, e.g. real(QR_Z(x))"));
        track(sub->add_option("--theta-max", cfg.params.theta_max, "rotation strength bound"));
        track(sub->add_option("--gn-sigma", cfg.params.gn_sigma, "gaussian noise stddev"));
        track(sub->add_option("--cr-bound", cfg.params.cr_bound_deg,
                              "classical rotation bound, degrees"));
        track(sub->add_option("--crop-enlarge", cfg.params.crop_enlarge, "crop resize ratio"));
        track(sub->add_option("--seed", cfg.seed, "global seed"));
        track(sub->add_option("--count", cfg.count, "corpus image count"));
        track(sub->add_flag("--uint8", cfg.convert_uint8, "analyse through 8-bit conversion"));
        track(sub->add_option("--format", cfg.format, "pgm|ppm|png|csv|json"));
        track(sub->add_option("--threads", cfg.threads, "worker pool size (0 = auto)"));
        track(sub->add_flag("--resize-pow2", cfg.resize_pow2,
                            "bilinear-resize inputs up to power-of-two dims"));
        sub->add_option("--config", config_path, "JSON config, flags take precedence");
    };

    CLI::App* augment = app.add_subcommand("augment", "augment a file or directory of images");
    add_shared(augment);
    track(augment->add_option("-i,--input", cfg.input, "input image or directory"))->required();
    track(augment->add_option("-o,--output", cfg.output, "output directory"))->required();

    CLI::App* spectrum = app.add_subcommand("spectrum", "singular value spectrum reports");
    add_shared(spectrum);
    track(spectrum->add_option("-i,--input", cfg.input, "input image or directory"))->required();
    track(spectrum->add_option("-o,--output", cfg.output, "report file (stdout if omitted)"));
    track(spectrum->add_option("--analysis-size", cfg.analysis_size,
                               "square power-of-two analysis size"));

    CLI::App* bench = app.add_subcommand("bench", "scaling benchmark of the rotation kernels");
    bench->add_option("--min-qubits", min_qubits, "smallest register");
    bench->add_option("--max-qubits", max_qubits, "largest register (<= 24)");
    bench->add_option("--reps", reps, "timing repetitions per size");
    bench->add_option("--seed", cfg.seed, "global seed");

    CLI::App* dp = app.add_subcommand("dp", "augment then add Laplace pixel noise");
    add_shared(dp);
    track(dp->add_option("-i,--input", cfg.input, "input image or directory"))->required();
    track(dp->add_option("-o,--output", cfg.output, "output directory"))->required();
    track(dp->add_option("--epsilon", cfg.epsilon, "privacy budget"));
    track(dp->add_option("--sensitivity", cfg.sensitivity, "per-pixel sensitivity"));

    CLI::App* demo = app.add_subcommand("demo", "write the full augmentation method catalog");
    add_shared(demo);
    track(demo->add_option("-i,--input", cfg.input, "input image"))->required();
    track(demo->add_option("-o,--output", cfg.output, "output directory"))->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            auto flag_was_passed = [&](const std::string& key) {
                static const std::unordered_map<std::string, std::string> names = {
                    {"spec", "--spec"},           {"theta_max", "--theta-max"},
                    {"gn_sigma", "--gn-sigma"},   {"cr_bound_deg", "--cr-bound"},
                    {"crop_enlarge", "--crop-enlarge"}, {"input", "--input"},
                    {"output", "--output"},       {"format", "--format"},
                    {"count", "--count"},         {"seed", "--seed"},
                    {"uint8", "--uint8"},         {"resize_pow2", "--resize-pow2"},
                    {"analysis_size", "--analysis-size"}, {"threads", "--threads"},
                    {"epsilon", "--epsilon"},     {"sensitivity", "--sensitivity"},
                };
                const auto it = names.find(key);
                if (it == names.end()) return false;
                for (const CLI::Option* opt : tracked) {
                    for (const std::string& n : opt->get_lnames()) {
                        if ("--" + n == it->second && opt->count() > 0) return true;
                    }
                }
                return false;
            };
            apply_config_file(config_path, cfg, flag_was_passed);
        }

        if (augment->parsed()) return cmd_augment(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (bench->parsed()) return cmd_bench(min_qubits, max_qubits, reps, cfg.seed);
        if (dp->parsed()) return cmd_dp(cfg);
        if (demo->parsed()) return cmd_demo(cfg);
        std::cerr << "no command selected\n";
        return kExitUsage;
    } catch (const qia::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const qia::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qia::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
