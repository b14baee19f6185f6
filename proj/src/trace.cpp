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

#include "ch5gr/trace.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr char trace_magic[8] = {'C', 'I', 'R', '5', 'G', 'R', '1', '\0'};

        static_assert(std::endian::native == std::endian::little,
                      "trace I/O assumes a little-endian host");

        template <typename T>
        void put(std::ostream &os, T value)
        {
            os.write(reinterpret_cast<const char *>(&value), sizeof(T));
        }

        template <typename T>
        T get(std::istream &is, std::uint64_t &offset, const char *what)
        {
            T value{};
            is.read(reinterpret_cast<char *>(&value), sizeof(T));
            if (!is)
                throw FormatError(std::string("trace file truncated reading ") + what, offset);
            offset += sizeof(T);
            return value;
        }
    }

    CirTrace::CirTrace(std::uint32_t t, std::uint32_t n, std::uint32_t u, std::uint32_t s,
                       TraceDomain domain, double snapshot_interval_s, double grid_step)
        : t_(t), n_(n), u_(u), s_(s), domain_(domain), dt_(snapshot_interval_s),
          step_(grid_step)
    {
        if (t == 0 || n == 0 || u == 0 || s == 0)
            throw std::invalid_argument("CirTrace: zero dimension");
        if (!(snapshot_interval_s >= 0.0) || !(grid_step > 0.0))
            throw std::invalid_argument("CirTrace: invalid intervals");
        data_.assign(static_cast<std::size_t>(t) * n * u * s, {0.0f, 0.0f});
    }

    std::complex<float> &CirTrace::at(std::uint32_t t, std::uint32_t k, std::uint32_t u,
                                      std::uint32_t s)
    {
        return data_[index(t, k, u, s)];
    }

    const std::complex<float> &CirTrace::at(std::uint32_t t, std::uint32_t k,
                                            std::uint32_t u, std::uint32_t s) const
    {
        return data_[index(t, k, u, s)];
    }

    void CirTrace::apply_large_scale(double pl_db)
    {
        if (!std::isfinite(pl_db))
            throw std::invalid_argument("apply_large_scale: non-finite path loss");
        const float scale = static_cast<float>(std::pow(10.0, -pl_db / 20.0));
        for (auto &v : data_)
            v *= scale;
    }

    CirTrace CirTrace::to_domain(TraceDomain target) const
    {
        if (target == domain_)
            return *this;

        // Grid step flips between 1/B and B/N; B = N * step for delay input,
        // B = N * step for frequency input as well by the pairing below.
        const double bandwidth = domain_ == TraceDomain::Delay
                                     ? 1.0 / step_
                                     : step_ * static_cast<double>(n_);
        const double new_step = target == TraceDomain::Frequency
                                    ? bandwidth / static_cast<double>(n_)
                                    : 1.0 / bandwidth;

        CirTrace out(t_, n_, u_, s_, target, dt_, new_step);
        out.seed = seed;
        out.config_hash = config_hash;

        const int n = static_cast<int>(n_);
        std::vector<std::complex<double>> in_buf(n_), out_buf(n_);
        // Delay -> frequency is the sign -1 transform; the inverse carries 1/N.
        const int sign = target == TraceDomain::Frequency ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex *>(in_buf.data()),
            reinterpret_cast<fftw_complex *>(out_buf.data()), sign, FFTW_ESTIMATE);

        const double scale = target == TraceDomain::Delay ? 1.0 / n_ : 1.0;
        for (std::uint32_t t = 0; t < t_; ++t)
            for (std::uint32_t u = 0; u < u_; ++u)
                for (std::uint32_t s = 0; s < s_; ++s)
                {
                    for (std::uint32_t k = 0; k < n_; ++k)
                        in_buf[k] = std::complex<double>(at(t, k, u, s));
                    fftw_execute(plan);
                    for (std::uint32_t k = 0; k < n_; ++k)
                        out.at(t, k, u, s) =
                            std::complex<float>(static_cast<float>(out_buf[k].real() * scale),
                                                static_cast<float>(out_buf[k].imag() * scale));
                }
        fftw_destroy_plan(plan);
        return out;
    }

    void CirTrace::save(const std::filesystem::path &path) const
    {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot open for writing: " + tmp.string());
            os.write(trace_magic, sizeof(trace_magic));
            put(os, t_);
            put(os, n_);
            put(os, u_);
            put(os, s_);
            put(os, static_cast<std::uint32_t>(domain_));
            put(os, dt_);
            put(os, step_);
            os.write(reinterpret_cast<const char *>(data_.data()),
                     static_cast<std::streamsize>(data_.size() * sizeof(std::complex<float>)));
            if (!os)
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    CirTrace CirTrace::load(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open trace file: " + path.string());

        char magic[8] = {};
        is.read(magic, sizeof(magic));
        if (!is)
            throw FormatError("trace file shorter than the magic", 0);
        for (std::uint64_t i = 0; i < sizeof(magic); ++i)
            if (magic[i] != trace_magic[i])
                throw FormatError("bad trace magic byte", i);

        std::uint64_t offset = 8;
        const auto t = get<std::uint32_t>(is, offset, "T");
        const auto n = get<std::uint32_t>(is, offset, "N");
        const auto u = get<std::uint32_t>(is, offset, "U");
        const auto s = get<std::uint32_t>(is, offset, "S");
        const auto dom = get<std::uint32_t>(is, offset, "domain");
        if (dom > 1)
            throw FormatError("invalid domain flag", offset - 4);
        const auto dt = get<double>(is, offset, "snapshot interval");
        const auto step = get<double>(is, offset, "grid step");
        if (t == 0 || n == 0 || u == 0 || s == 0 || !(step > 0.0) || !(dt >= 0.0))
            throw FormatError("invalid trace header", 8);

        CirTrace trace(t, n, u, s, static_cast<TraceDomain>(dom), dt, step);
        const std::size_t bytes = trace.data_.size() * sizeof(std::complex<float>);
        is.read(reinterpret_cast<char *>(trace.data_.data()),
                static_cast<std::streamsize>(bytes));
        if (static_cast<std::size_t>(is.gcount()) != bytes)
            throw FormatError("trace payload truncated",
                              offset + static_cast<std::uint64_t>(is.gcount()));
        for (const auto &v : trace.data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw FormatError("non-finite coefficient in trace", offset);
        return trace;
    }

    void CirTrace::export_csv(const std::filesystem::path &path) const
    {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream os(tmp, std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot open for writing: " + tmp.string());
            os << "snapshot,bin,rx,tx,re,im\n";
            for (std::uint32_t t = 0; t < t_; ++t)
                for (std::uint32_t k = 0; k < n_; ++k)
                    for (std::uint32_t u = 0; u < u_; ++u)
                        for (std::uint32_t s = 0; s < s_; ++s)
                        {
                            const auto &v = at(t, k, u, s);
                            os << t << ',' << k << ',' << u << ',' << s << ','
                               << v.real() << ',' << v.imag() << '\n';
                        }
            if (!os)
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

} // namespace ch5gr
