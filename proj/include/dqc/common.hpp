// Copyright 2026 The dqc Authors
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
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dqc {

/// Numerical tolerance shared by every simulator comparison.
inline constexpr double kTolerance = 1e-9;

/// A condition that should be impossible in an honest, well-formed run.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Raised when a protocol asks for more Bell pairs than the budget allows.
struct ResourceExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic random stream that can be split into named children.
///
/// A child stream depends only on the parent seed and the child name, so
/// sub-protocols draw from independent streams regardless of call order.
class Rng {
   public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix(seed)) {
    }

    std::uint64_t seed() const {
        return seed_;
    }

    Rng split(std::string_view name) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return Rng(mix(seed_ ^ mix(h)));
    }

    Rng split(std::uint64_t index) const {
        return Rng(mix(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bit() {
        return (engine_() >> 63) != 0;
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("Rng::below(0)");
        }
        std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
        return dist(engine_);
    }

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace dqc
