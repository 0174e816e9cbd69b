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

#include <cmath>
#include <cstdint>
#include <random>

namespace qia {

/// splitmix64 finalizer. Used both to whiten seeds and to derive independent
/// child seeds from (seed, tag) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic seed derivation: fold each tag into the running seed.
/// mix_seed(s, a, b) != mix_seed(s, b, a) in general; callers rely on that to
/// keep independent streams apart.
inline std::uint64_t mix_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Tags>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
    return mix_seed(splitmix64(seed ^ splitmix64(tag)), rest...);
}

/// Seeded generator with portable value mappings.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// standard. The distribution mappings below are written out explicitly
/// because std::uniform_real_distribution and friends are
/// implementation-defined; with these mappings the seed -> draw sequence is
/// identical on every conforming platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the closed interval [0, 1]: 53-bit mantissa over 2^53 - 1.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740991.0);
    }

    /// Uniform on the closed interval [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unbiased integer in [0, n). Multiply-shift with rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = next_u64();
            const auto wide = static_cast<unsigned __int128>(x) * n;
            if (static_cast<std::uint64_t>(wide) >= threshold) {
                return static_cast<std::uint64_t>(wide >> 64);
            }
        }
    }

    /// Standard normal via Box-Muller; one spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();  // log(0) guard
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Laplace(0, scale) by inverse CDF.
    double laplace(double scale) {
        const double u = uniform01() - 0.5;
        const double m = std::abs(u);
        // u == +-0.5 would take log(0); nudge inside the open interval.
        const double clipped = m >= 0.5 ? 0.49999999999999994 : m;
        const double mag = -scale * std::log(1.0 - 2.0 * clipped);
        return u < 0 ? -mag : mag;
    }

    /// Fisher-Yates shuffle of a small array.
    template <typename T, std::size_t N>
    void shuffle(T (&items)[N]) {
        for (std::size_t i = N - 1; i > 0; --i) {
            const std::uint64_t j = uniform_index(i + 1);
            T tmp = items[i];
            items[i] = items[j];
            items[j] = tmp;
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qia
