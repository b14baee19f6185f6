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

#ifndef ch5gr_trace_H
#define ch5gr_trace_H

#include <complex>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ch5gr
{
    // Raised on malformed trace files; `offset` is the failing byte position.
    class FormatError : public std::runtime_error
    {
    public:
        FormatError(const std::string &msg, std::uint64_t offset_bytes)
            : std::runtime_error(msg + " (offset " + std::to_string(offset_bytes) + ")"),
              offset(offset_bytes)
        {
        }
        std::uint64_t offset;
    };

    enum class TraceDomain : std::uint32_t
    {
        Delay = 0,
        Frequency = 1,
    };

    // Time-variant channel coefficients, dimensions (T, N, U, S) with N either
    // delay taps (grid step 1/B) or frequency points (grid step B/N).
    //
    // File format: 8-byte magic "CIR5GR1\0"; little-endian u32 T, N, U, S,
    // domain (0 delay, 1 frequency); float64 snapshot interval [s]; float64
    // grid step [s or Hz]; then T*N*U*S coefficients as interleaved
    // little-endian float32 (re, im), t-major, then grid, then u, then s.
    class CirTrace
    {
    public:
        CirTrace(std::uint32_t t, std::uint32_t n, std::uint32_t u, std::uint32_t s,
                 TraceDomain domain, double snapshot_interval_s, double grid_step);

        std::uint32_t n_snapshots() const { return t_; }
        std::uint32_t n_grid() const { return n_; }
        std::uint32_t n_rx() const { return u_; }
        std::uint32_t n_tx() const { return s_; }
        TraceDomain domain() const { return domain_; }
        double snapshot_interval_s() const { return dt_; }
        double grid_step() const { return step_; }

        std::complex<float> &at(std::uint32_t t, std::uint32_t k, std::uint32_t u,
                                std::uint32_t s);
        const std::complex<float> &at(std::uint32_t t, std::uint32_t k, std::uint32_t u,
                                      std::uint32_t s) const;

        const std::vector<std::complex<float>> &data() const { return data_; }
        std::vector<std::complex<float>> &data() { return data_; }

        // Multiplies every coefficient by 10^(-pl_db/20).
        void apply_large_scale(double pl_db);

        // DFT between the delay-tap and frequency-point representations; the
        // grid step maps 1/B <-> B/N.
        CirTrace to_domain(TraceDomain target) const;

        void save(const std::filesystem::path &path) const; // atomic
        static CirTrace load(const std::filesystem::path &path);

        void export_csv(const std::filesystem::path &path) const;

        // Not part of the binary format; carried for manifests.
        std::uint64_t seed = 0;
        std::uint64_t config_hash = 0;

    private:
        std::uint32_t t_, n_, u_, s_;
        TraceDomain domain_;
        double dt_;
        double step_;
        std::vector<std::complex<float>> data_;

        std::size_t index(std::uint32_t t, std::uint32_t k, std::uint32_t u,
                          std::uint32_t s) const
        {
            return ((static_cast<std::size_t>(t) * n_ + k) * u_ + u) * s_ + s;
        }
    };

} // namespace ch5gr

#endif
