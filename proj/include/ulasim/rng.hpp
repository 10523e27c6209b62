// SPDX-License-Identifier: Apache-2.0
//
// ulasim - link-level simulator for a high-mobility OFDM uplink with a large
// uniform linear transmit array
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ULASIM_RNG_HPP
#define ULASIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ulasim
{

// Seeded random stream with deterministic, order-independent forking.
//
// fork(a, b) derives a child seed purely from the creation seed and the two
// labels, never from the generator state, so the set of child streams a run
// uses does not depend on the order in which they are created. Variates are
// produced by explicit bit manipulation / Box-Muller rather than the standard
// library distributions, whose output is implementation-defined; this keeps
// results bit-identical across toolchains.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

    // Child stream labelled (a, b); depends only on (creation seed, a, b).
    Rng fork(std::uint64_t a, std::uint64_t b = 0) const
    {
        std::uint64_t s = mix(seed_ ^ mix(a + 0x9e3779b97f4a7c15ULL));
        s = mix(s ^ mix(b + 0xbf58476d1ce4e5b9ULL));
        return Rng(s);
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on [0, 2*pi).
    double angle() { return uniform() * 2.0 * pi; }

    // Standard normal via Box-Muller; pairs are generated and cached.
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    // Circularly-symmetric complex normal with unit total variance
    // (each real dimension has variance 1/2).
    std::complex<double> cnormal()
    {
        double re = normal();
        double im = normal();
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

    std::uint64_t creation_seed() const { return seed_; }

    static constexpr double pi = 3.141592653589793238462643383279502884;

  private:
    // splitmix64 finalizer; scrambles seeds and fork labels.
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr double inv_sqrt2 = 0.7071067811865475244;

    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ulasim

#endif
