// SPDX-License-Identifier: Apache-2.0
//
// ch5gr - cluster-based time-variant channel simulator for 5G railway links
// Copyright (C) 2026 ch5gr contributors
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

#ifndef ch5gr_rng_H
#define ch5gr_rng_H

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace ch5gr
{
    // 64-bit FNV-1a, used to derive labeled substreams from a master seed.
    std::uint64_t fnv1a64(std::string_view text);

    // Stable substream seed for (master_seed, label). Adding new labels never
    // perturbs the streams of existing ones.
    std::uint64_t substream_seed(std::uint64_t master_seed, std::string_view label);

    // Deterministic random stream (xoshiro256++ core, splitmix64 seeding).
    // All samplers are hand-rolled on top of next_u64() so that sequences are
    // bit-identical across compilers and platforms.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed);
        Rng(std::uint64_t master_seed, std::string_view label);

        std::uint64_t next_u64();

        double uniform();                       // [0, 1)
        double uniform_open();                  // (0, 1), safe under log()
        double uniform(double lo, double hi);   // [lo, hi)
        double normal();                        // N(0, 1)
        double normal(double mu, double sigma);
        double lognormal(double log_mu, double log_sigma);
        double exponential(double mean);
        double laplace(double scale);           // zero-mean, scale b
        std::uint64_t poisson(double mean);
        std::uint64_t uniform_index(std::uint64_t n); // {0, ..., n-1}

        // One draw from a finite distribution; probs need not be normalized.
        std::size_t categorical(std::span<const double> probs);

    private:
        std::array<std::uint64_t, 4> state_{};
        double spare_normal_ = 0.0;
        bool has_spare_normal_ = false;
    };

} // namespace ch5gr

#endif
