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

#include "ch5gr/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ch5gr
{
    std::uint64_t fnv1a64(std::string_view text)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    static std::uint64_t splitmix64(std::uint64_t &x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t substream_seed(std::uint64_t master_seed, std::string_view label)
    {
        std::uint64_t x = master_seed ^ 0x6a09e667f3bcc908ULL;
        std::uint64_t a = splitmix64(x);
        x ^= fnv1a64(label);
        std::uint64_t b = splitmix64(x);
        return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }

    Rng::Rng(std::uint64_t seed)
    {
        std::uint64_t x = seed;
        for (auto &s : state_)
            s = splitmix64(x);
    }

    Rng::Rng(std::uint64_t master_seed, std::string_view label)
        : Rng(substream_seed(master_seed, label))
    {
    }

    static inline std::uint64_t rotl(std::uint64_t v, int k)
    {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t Rng::next_u64()
    {
        // xoshiro256++
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double Rng::uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double Rng::uniform_open()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double Rng::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double Rng::normal()
    {
        if (has_spare_normal_)
        {
            has_spare_normal_ = false;
            return spare_normal_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_normal_ = r * std::sin(a);
        has_spare_normal_ = true;
        return r * std::cos(a);
    }

    double Rng::normal(double mu, double sigma)
    {
        return mu + sigma * normal();
    }

    double Rng::lognormal(double log_mu, double log_sigma)
    {
        return std::exp(normal(log_mu, log_sigma));
    }

    double Rng::exponential(double mean)
    {
        return -mean * std::log(uniform_open());
    }

    double Rng::laplace(double scale)
    {
        const double u = uniform() - 0.5;
        return -scale * (u < 0.0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::fabs(u));
    }

    std::uint64_t Rng::poisson(double mean)
    {
        if (mean < 0.0)
            throw std::invalid_argument("poisson: mean must be >= 0");
        if (mean == 0.0)
            return 0;
        if (mean < 30.0)
        {
            // Knuth multiplication method
            const double limit = std::exp(-mean);
            double p = 1.0;
            std::uint64_t k = 0;
            do
            {
                ++k;
                p *= uniform_open();
            } while (p > limit);
            return k - 1;
        }
        // Normal approximation with continuity correction for large means;
        // adequate for birth counts, which stay small in practice.
        const double g = normal(mean, std::sqrt(mean));
        return g <= 0.0 ? 0 : static_cast<std::uint64_t>(g + 0.5);
    }

    std::uint64_t Rng::uniform_index(std::uint64_t n)
    {
        if (n == 0)
            throw std::invalid_argument("uniform_index: empty range");
        // Rejection to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do
        {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    std::size_t Rng::categorical(std::span<const double> probs)
    {
        if (probs.empty())
            throw std::invalid_argument("categorical: empty distribution");
        double total = 0.0;
        for (double p : probs)
        {
            if (p < 0.0 || !std::isfinite(p))
                throw std::invalid_argument("categorical: invalid probability");
            total += p;
        }
        if (total <= 0.0)
            throw std::invalid_argument("categorical: zero total mass");
        double u = uniform() * total;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i)
        {
            u -= probs[i];
            if (u < 0.0)
                return i;
        }
        return probs.size() - 1;
    }

} // namespace ch5gr
