// Copyright 2026 The mechtomo Authors
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

#ifndef MECHTOMO_RNG_HPP
#define MECHTOMO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mechtomo {

/// Seeded 64-bit generator used by every stochastic operation in the library.
///
/// The core is std::mt19937_64, whose output sequence is fully pinned by the
/// C++ standard, with uniform and Gaussian variates derived by fixed formulas
/// (53-bit mantissa scaling and Box–Muller) rather than the distribution
/// classes, whose streams are implementation-defined. Same seed, same samples.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box–Muller. Consumes exactly two uniforms per call;
    /// the second branch of the pair is discarded to keep the stream position
    /// a simple function of the call count.
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double gaussian(double mean, double stddev) {
        return mean + stddev * gaussian();
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mechtomo

#endif
