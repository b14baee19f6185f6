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

#include "ch5gr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        double normal_cdf(double x, double mu, double sigma)
        {
            return 0.5 * (1.0 + std::erf((x - mu) / (sigma * std::numbers::sqrt2)));
        }

        double wrap_pm_pi(double a)
        {
            a = std::fmod(a + pi, 2.0 * pi);
            if (a < 0.0)
                a += 2.0 * pi;
            return a - pi;
        }
    }

    Pdp instantaneous_pdp(std::span<const std::complex<float>> taps, double delay_step_s,
                          double time_s)
    {
        if (delay_step_s <= 0.0)
            throw std::invalid_argument("instantaneous_pdp: invalid delay step");
        Pdp p;
        p.time_s = time_s;
        p.delay_step_s = delay_step_s;
        p.power.reserve(taps.size());
        for (const auto &h : taps)
        {
            if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
                throw std::invalid_argument("instantaneous_pdp: non-finite tap");
            p.power.push_back(static_cast<double>(h.real()) * h.real() +
                              static_cast<double>(h.imag()) * h.imag());
        }
        return p;
    }

    double estimate_noise_floor_db(const Pdp &pdp)
    {
        if (pdp.power.empty())
            return -std::numeric_limits<double>::infinity();
        std::vector<double> db;
        db.reserve(pdp.power.size());
        for (double p : pdp.power)
            db.push_back(p > 0.0 ? 10.0 * std::log10(p)
                                 : -std::numeric_limits<double>::infinity());
        std::nth_element(db.begin(), db.begin() + db.size() / 2, db.end());
        return db[db.size() / 2];
    }

    Pdp apdp(std::span<const Pdp> window, double noise_floor_db)
    {
        if (window.empty())
            throw std::invalid_argument("apdp: empty window");
        const std::size_t bins = window.front().power.size();
        for (const auto &p : window)
            if (p.power.size() != bins || p.delay_step_s != window.front().delay_step_s)
                throw std::invalid_argument("apdp: inconsistent PDP grids");

        Pdp out;
        out.time_s = window.front().time_s;
        out.delay_step_s = window.front().delay_step_s;
        out.power.assign(bins, 0.0);
        for (const auto &p : window)
            for (std::size_t k = 0; k < bins; ++k)
                out.power[k] += p.power[k];
        for (auto &v : out.power)
            v /= static_cast<double>(window.size());

        if (std::isfinite(noise_floor_db))
        {
            const double cut = std::pow(10.0, (noise_floor_db + 6.0) / 10.0);
            for (auto &v : out.power)
                if (v < cut)
                    v = 0.0;
        }
        return out;
    }

    double rms_delay_spread(const Pdp &apdp)
    {
        double total = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t k = 0; k < apdp.power.size(); ++k)
        {
            const double tau = static_cast<double>(k) * apdp.delay_step_s;
            const double p = apdp.power[k];
            if (p < 0.0)
                throw std::invalid_argument("rms_delay_spread: negative power");
            total += p;
            m1 += p * tau;
            m2 += p * tau * tau;
        }
        if (total <= 0.0)
            throw std::domain_error("rms_delay_spread: all-zero profile");
        const double mean = m1 / total;
        return std::sqrt(std::max(m2 / total - mean * mean, 0.0));
    }

    double rms_delay_spread(std::span<const double> delays_s,
                            std::span<const double> powers_lin)
    {
        if (delays_s.size() != powers_lin.size() || delays_s.empty())
            throw std::invalid_argument("rms_delay_spread: size mismatch");
        double total = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < delays_s.size(); ++i)
        {
            total += powers_lin[i];
            m1 += powers_lin[i] * delays_s[i];
            m2 += powers_lin[i] * delays_s[i] * delays_s[i];
        }
        if (total <= 0.0)
            throw std::domain_error("rms_delay_spread: zero total power");
        const double mean = m1 / total;
        return std::sqrt(std::max(m2 / total - mean * mean, 0.0));
    }

    double rice_k_factor_db(const Pdp &apdp)
    {
        double best = 0.0, rest = 0.0;
        std::size_t valid = 0;
        for (double p : apdp.power)
        {
            if (p <= 0.0)
                continue;
            ++valid;
            if (p > best)
            {
                rest += best;
                best = p;
            }
            else
            {
                rest += p;
            }
        }
        if (valid == 0)
            throw std::domain_error("rice_k_factor_db: empty profile");
        if (valid < 2)
            throw SinglePathError();
        return 10.0 * std::log10(best / rest);
    }

    std::vector<double> extract_large_scale(const CirTrace &trace, int window_snapshots)
    {
        if (window_snapshots < 1)
            throw std::invalid_argument("extract_large_scale: window must be >= 1");
        const int t_count = static_cast<int>(trace.n_snapshots());
        if (window_snapshots > t_count)
            throw std::invalid_argument("extract_large_scale: window exceeds trace");

        std::vector<double> out(static_cast<std::size_t>(t_count));
        const std::size_t per_snapshot = static_cast<std::size_t>(trace.n_grid()) *
                                         trace.n_rx() * trace.n_tx();

        // Prefix power sums per snapshot keep the sliding window linear.
        std::vector<double> snap_power(static_cast<std::size_t>(t_count), 0.0);
        for (int t = 0; t < t_count; ++t)
        {
            double acc = 0.0;
            for (std::uint32_t k = 0; k < trace.n_grid(); ++k)
                for (std::uint32_t u = 0; u < trace.n_rx(); ++u)
                    for (std::uint32_t s = 0; s < trace.n_tx(); ++s)
                    {
                        const auto &h = trace.at(static_cast<std::uint32_t>(t), k, u, s);
                        acc += static_cast<double>(h.real()) * h.real() +
                               static_cast<double>(h.imag()) * h.imag();
                    }
            snap_power[static_cast<std::size_t>(t)] = acc;
        }

        for (int t = 0; t < t_count; ++t)
        {
            int lo = t - window_snapshots / 2;
            int hi = lo + window_snapshots; // exclusive
            lo = std::max(lo, 0);
            hi = std::min(hi, t_count);
            double acc = 0.0;
            for (int w = lo; w < hi; ++w)
                acc += snap_power[static_cast<std::size_t>(w)];
            const double mean =
                acc / (static_cast<double>(hi - lo) * static_cast<double>(per_snapshot));
            out[static_cast<std::size_t>(t)] = -10.0 * std::log10(mean);
        }
        return out;
    }

    PathLossFit fit_path_loss(std::span<const double> distances_m,
                              std::span<const double> large_scale_db, double d0_m)
    {
        if (distances_m.size() != large_scale_db.size() || distances_m.size() < 2)
            throw std::invalid_argument("fit_path_loss: need >= 2 points");
        if (d0_m <= 0.0)
            throw std::invalid_argument("fit_path_loss: d0 must be > 0");

        const std::size_t n = distances_m.size();
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (distances_m[i] < d0_m)
                throw std::invalid_argument("fit_path_loss: distance below d0");
            x[i] = 10.0 * std::log10(distances_m[i] / d0_m);
            sx += x[i];
            sy += large_scale_db[i];
            sxx += x[i] * x[i];
            sxy += x[i] * large_scale_db[i];
        }
        const double denom = static_cast<double>(n) * sxx - sx * sx;
        if (std::fabs(denom) < 1e-12)
            throw std::invalid_argument("fit_path_loss: degenerate design (single distance)");

        PathLossFit fit;
        fit.exponent = (static_cast<double>(n) * sxy - sx * sy) / denom;
        fit.intercept_db = (sy - fit.exponent * sx) / static_cast<double>(n);
        fit.residuals_db.resize(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            fit.residuals_db[i] =
                large_scale_db[i] - (fit.intercept_db + fit.exponent * x[i]);
            ss += fit.residuals_db[i] * fit.residuals_db[i];
        }
        fit.sf_sigma_db = std::sqrt(ss / static_cast<double>(n));
        return fit;
    }

    double tpcc(const Pdp &a, const Pdp &b)
    {
        if (a.power.size() != b.power.size() || a.delay_step_s != b.delay_step_s)
            throw std::invalid_argument("tpcc: PDPs on different grids");
        double cross = 0.0, aa = 0.0, bb = 0.0;
        for (std::size_t k = 0; k < a.power.size(); ++k)
        {
            if (a.power[k] < 0.0 || b.power[k] < 0.0)
                throw std::invalid_argument("tpcc: negative power");
            cross += a.power[k] * b.power[k];
            aa += a.power[k] * a.power[k];
            bb += b.power[k] * b.power[k];
        }
        const double denom = std::max(aa, bb);
        if (denom <= 0.0)
            throw std::domain_error("tpcc: both profiles are all-zero");
        return cross / denom;
    }

    std::vector<StationarityRegion> stationarity_regions(std::span<const Pdp> pdps,
                                                         double threshold,
                                                         double speed_mps,
                                                         double snapshot_dt_s)
    {
        if (threshold <= 0.0 || threshold > 1.0)
            throw std::invalid_argument("stationarity_regions: threshold outside (0, 1]");
        if (snapshot_dt_s <= 0.0)
            throw std::invalid_argument("stationarity_regions: invalid snapshot interval");
        if (speed_mps < 0.0)
            throw std::invalid_argument("stationarity_regions: negative speed");

        std::vector<StationarityRegion> out;
        const int n = static_cast<int>(pdps.size());
        for (int i = 0; i < n; ++i)
        {
            int len = 0;
            for (int j = i; j < n; ++j)
            {
                if (tpcc(pdps[static_cast<std::size_t>(i)],
                         pdps[static_cast<std::size_t>(j)]) < threshold)
                    break;
                ++len;
            }
            StationarityRegion r;
            r.anchor_snapshot = i;
            r.delta_w_s = static_cast<double>(len) * snapshot_dt_s;
            r.distance_m = speed_mps * r.delta_w_s;
            out.push_back(r);
        }
        return out;
    }

    double angular_spread_rad(std::span<const MpcEntry> mpcs, AngleDim dim)
    {
        if (mpcs.empty())
            throw std::invalid_argument("angular_spread: no components");
        double total = 0.0;
        for (const auto &m : mpcs)
            total += std::norm(m.amplitude);
        if (total <= 0.0)
            throw std::domain_error("angular_spread: zero total power");

        if (dim == AngleDim::Azimuth)
        {
            double c = 0.0, s = 0.0;
            for (const auto &m : mpcs)
            {
                const double w = std::norm(m.amplitude);
                c += w * std::cos(m.aoa_rad);
                s += w * std::sin(m.aoa_rad);
            }
            const double mean = std::atan2(s, c);
            double acc = 0.0;
            for (const auto &m : mpcs)
            {
                const double d = wrap_pm_pi(m.aoa_rad - mean);
                acc += std::norm(m.amplitude) * d * d;
            }
            return std::sqrt(acc / total);
        }

        double mean = 0.0;
        for (const auto &m : mpcs)
            mean += std::norm(m.amplitude) * m.eoa_rad;
        mean /= total;
        double acc = 0.0;
        for (const auto &m : mpcs)
        {
            const double d = m.eoa_rad - mean;
            acc += std::norm(m.amplitude) * d * d;
        }
        return std::sqrt(acc / total);
    }

    FitResult fit_distribution(std::span<const double> samples, DistFamily family)
    {
        if (samples.size() < 2)
            throw std::invalid_argument("fit_distribution: need >= 2 samples");
        std::vector<double> v;
        v.reserve(samples.size());
        for (double s : samples)
        {
            if (family == DistFamily::LogNormal)
            {
                if (s <= 0.0)
                    throw std::invalid_argument(
                        "fit_distribution: non-positive sample under lognormal");
                v.push_back(std::log(s));
            }
            else
            {
                v.push_back(s);
            }
        }

        FitResult fit;
        fit.family = family;
        fit.n = v.size();
        double mean = 0.0;
        for (double s : v)
            mean += s;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double s : v)
            var += (s - mean) * (s - mean);
        var /= static_cast<double>(v.size());
        fit.mu = mean;
        fit.sigma = std::sqrt(var);

        std::sort(v.begin(), v.end());
        if (fit.sigma == 0.0)
        {
            fit.ks_stat = 0.0;
            return fit;
        }
        double d = 0.0;
        const auto n = static_cast<double>(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const double f = normal_cdf(v[i], fit.mu, fit.sigma);
            d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
            d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        }
        fit.ks_stat = d;
        return fit;
    }

    double ks_uniform01(std::span<const double> samples)
    {
        if (samples.empty())
            throw std::invalid_argument("ks_uniform01: no samples");
        std::vector<double> v(samples.begin(), samples.end());
        std::sort(v.begin(), v.end());
        const auto n = static_cast<double>(v.size());
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - v[i]));
            d = std::max(d, std::fabs(v[i] - static_cast<double>(i) / n));
        }
        return d;
    }

} // namespace ch5gr
