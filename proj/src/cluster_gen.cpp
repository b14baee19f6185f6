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

#include "ch5gr/cluster_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double zenith_eps = 1e-6;

        double clamp_zenith(double z)
        {
            return std::clamp(z, zenith_eps, pi - zenith_eps);
        }

        // Spread inflation so the power-weighted empirical spread of a finite
        // set is unbiased: E[sum w (x - xbar_w)^2] = s^2 (1 - sum w^2).
        double finite_set_inflation(std::span<const double> powers)
        {
            double total = 0.0, sq = 0.0;
            for (double p : powers)
            {
                total += p;
                sq += p * p;
            }
            if (total <= 0.0)
                return 1.0;
            const double frac = sq / (total * total);
            if (frac >= 1.0 - 1e-12)
                return 1.0; // single effective cluster, spread is unattainable
            return 1.0 / std::sqrt(1.0 - frac);
        }

        template <typename T>
        void permute(std::vector<T> &v, Rng &rng)
        {
            for (std::size_t i = v.size(); i > 1; --i)
                std::swap(v[i - 1], v[rng.uniform_index(i)]);
        }
    }

    void ClusterGenConfig::validate() const
    {
        if (n_clusters < 1 || n_clusters > 20)
            throw std::invalid_argument("clusters: n_clusters must be in [1, 20]");
        if (rays_per_cluster < 1)
            throw std::invalid_argument("clusters: rays_per_cluster must be >= 1");
        if (r_tau <= 1.0)
            throw std::invalid_argument("clusters: r_tau must be > 1");
        if (per_cluster_shadow_db < 0.0)
            throw std::invalid_argument("clusters: per-cluster shadowing must be >= 0");
        if (xpr.sigma_db < 0.0)
            throw std::invalid_argument("clusters: xpr sigma must be >= 0");
    }

    std::size_t ClusterSet::n_alive() const
    {
        return static_cast<std::size_t>(
            std::count_if(clusters.begin(), clusters.end(),
                          [](const ClusterState &c) { return c.alive; }));
    }

    double ClusterSet::min_alive_delay_abs() const
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto &c : clusters)
            if (c.alive)
                m = std::min(m, c.delay_abs_s);
        return m;
    }

    std::vector<double> generate_delays(int n, double ds_s, double r_tau, Rng &rng)
    {
        if (n < 1)
            throw std::invalid_argument("generate_delays: need n >= 1");
        if (ds_s <= 0.0)
            throw std::invalid_argument("generate_delays: DS must be > 0");
        if (r_tau <= 1.0)
            throw std::invalid_argument("generate_delays: r_tau must be > 1");
        std::vector<double> delays(static_cast<std::size_t>(n));
        for (auto &d : delays)
            d = -r_tau * ds_s * std::log(rng.uniform_open());
        std::sort(delays.begin(), delays.end());
        const double first = delays.front();
        for (auto &d : delays)
            d -= first;
        return delays;
    }

    std::vector<double> generate_powers(std::span<const double> delays_s, double ds_s,
                                        double r_tau, double zeta_db, Rng &rng,
                                        std::vector<double> *shadow_db_out)
    {
        if (delays_s.empty())
            throw std::invalid_argument("generate_powers: empty delay set");
        if (ds_s <= 0.0 || r_tau <= 1.0 || zeta_db < 0.0)
            throw std::invalid_argument("generate_powers: invalid parameters");
        std::vector<double> powers(delays_s.size());
        if (shadow_db_out)
            shadow_db_out->resize(delays_s.size());
        double total = 0.0;
        for (std::size_t i = 0; i < delays_s.size(); ++i)
        {
            const double z = zeta_db > 0.0 ? rng.normal(0.0, zeta_db) : 0.0;
            if (shadow_db_out)
                (*shadow_db_out)[i] = z;
            powers[i] = std::exp(-delays_s[i] * (r_tau - 1.0) / (r_tau * ds_s)) *
                        std::pow(10.0, -z / 10.0);
            total += powers[i];
        }
        for (auto &p : powers)
            p /= total;
        return powers;
    }

    std::vector<double> generate_cluster_azimuths(int n, double spread_rad, double center,
                                                  std::span<const double> powers, Rng &rng)
    {
        if (n < 1 || powers.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("generate_cluster_azimuths: size mismatch");
        if (spread_rad < 0.0)
            throw std::invalid_argument("generate_cluster_azimuths: negative spread");
        const double s = spread_rad * finite_set_inflation(powers);
        std::vector<double> out(static_cast<std::size_t>(n));
        for (auto &a : out)
            a = SphericalAngles::wrap_azimuth(center + (s > 0.0 ? rng.normal(0.0, s) : 0.0));
        return out;
    }

    std::vector<double> generate_cluster_zeniths(int n, double spread_rad, double center,
                                                 std::span<const double> powers, Rng &rng)
    {
        if (n < 1 || powers.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("generate_cluster_zeniths: size mismatch");
        if (spread_rad < 0.0)
            throw std::invalid_argument("generate_cluster_zeniths: negative spread");
        // Laplacian with unit-variance scale b = s/sqrt(2)
        const double b = spread_rad * finite_set_inflation(powers) / std::numbers::sqrt2;
        std::vector<double> out(static_cast<std::size_t>(n));
        for (auto &z : out)
            z = clamp_zenith(center + (b > 0.0 ? rng.laplace(b) : 0.0));
        return out;
    }

    std::vector<double> ray_offset_table(int m)
    {
        if (m < 1)
            throw std::invalid_argument("ray_offset_table: need m >= 1");
        std::vector<double> t(static_cast<std::size_t>(m));
        if (m == 1)
        {
            t[0] = 0.0;
            return t;
        }
        const double b = 1.0 / std::numbers::sqrt2; // unit-variance Laplacian
        for (int k = 0; k < m; ++k)
        {
            const double p = (k + 0.5) / m;
            t[static_cast<std::size_t>(k)] =
                p < 0.5 ? b * std::log(2.0 * p) : -b * std::log(2.0 * (1.0 - p));
        }
        // Rescale so the table RMS is exactly 1 (midpoints truncate the tails).
        double rms = 0.0;
        for (double v : t)
            rms += v * v;
        rms = std::sqrt(rms / m);
        for (auto &v : t)
            v /= rms;
        return t;
    }

    std::vector<Ray> spawn_rays(const ClusterMeanAngles &mean, double c_asd_rad,
                                double c_esd_rad, double c_asa_rad, double c_esa_rad,
                                int m, const XprModel &xpr, Rng &rng,
                                std::span<const double> offset_override)
    {
        if (m < 1)
            throw std::invalid_argument("spawn_rays: need m >= 1");
        std::vector<double> base;
        if (!offset_override.empty())
        {
            if (offset_override.size() != static_cast<std::size_t>(m))
                throw std::invalid_argument("spawn_rays: offset table size mismatch");
            base.assign(offset_override.begin(), offset_override.end());
        }
        else
        {
            base = ray_offset_table(m);
        }

        // Random coupling: independent permutation per angle dimension.
        std::vector<double> off_aod = base, off_eod = base, off_aoa = base, off_eoa = base;
        permute(off_aod, rng);
        permute(off_eod, rng);
        permute(off_aoa, rng);
        permute(off_eoa, rng);

        std::vector<Ray> rays(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
        {
            Ray &r = rays[static_cast<std::size_t>(i)];
            r.aod_az = SphericalAngles::wrap_azimuth(mean.aod_az + off_aod[i] * c_asd_rad);
            r.eod_zen = clamp_zenith(mean.eod_zen + off_eod[i] * c_esd_rad);
            r.aoa_az = SphericalAngles::wrap_azimuth(mean.aoa_az + off_aoa[i] * c_asa_rad);
            r.eoa_zen = clamp_zenith(mean.eoa_zen + off_eoa[i] * c_esa_rad);
            r.phase_tt = pi - 2.0 * pi * rng.uniform(); // (-pi, pi]
            r.phase_tp = pi - 2.0 * pi * rng.uniform();
            r.phase_pt = pi - 2.0 * pi * rng.uniform();
            r.phase_pp = pi - 2.0 * pi * rng.uniform();
            const double xpr_db = rng.normal(xpr.mu_db, xpr.sigma_db);
            r.xpr_linear = std::pow(10.0, xpr_db / 10.0);
        }
        return rays;
    }

    LosDirections los_directions(const Vec3 &bs_pos, const Vec3 &ut_pos)
    {
        const Vec3 d = ut_pos - bs_pos;
        const double horiz = std::sqrt(d.x * d.x + d.y * d.y);
        const double az_dep = std::atan2(d.y, d.x);
        const double zen_dep = std::atan2(horiz, d.z);
        const double az_arr = std::atan2(-d.y, -d.x);
        const double zen_arr = std::atan2(horiz, -d.z);
        return {SphericalAngles(az_dep, clamp_zenith(zen_dep)),
                SphericalAngles(az_arr, clamp_zenith(zen_arr))};
    }

    namespace
    {
        struct IntraSpreads
        {
            double asa, esa, asd, esd; // radians
        };

        IntraSpreads intra_spreads(const ClusterGenConfig &cfg, const LspSample &lsps,
                                   double asd_deg, double esd_deg)
        {
            const double split = 1.0 / std::sqrt(static_cast<double>(cfg.n_clusters));
            const double d2r = pi / 180.0;
            IntraSpreads s{};
            s.asa = (cfg.c_asa_deg >= 0.0 ? cfg.c_asa_deg : lsps.asa_deg * split) * d2r;
            s.esa = (cfg.c_esa_deg >= 0.0 ? cfg.c_esa_deg : lsps.esa_deg * split) * d2r;
            s.asd = (cfg.c_asd_deg >= 0.0 ? cfg.c_asd_deg : asd_deg * split) * d2r;
            s.esd = (cfg.c_esd_deg >= 0.0 ? cfg.c_esd_deg : esd_deg * split) * d2r;
            return s;
        }
    }

    ClusterSet generate_cluster_set(const ClusterGenConfig &cfg, const LspSample &lsps,
                                    const LosDirections &los, double base_delay_abs_s,
                                    double timestamp_s, Rng &rng)
    {
        cfg.validate();
        if (lsps.ds_ns <= 0.0 || lsps.asa_deg < 0.0 || lsps.esa_deg < 0.0)
            throw std::invalid_argument("generate_cluster_set: invalid LSP sample");

        const int n = cfg.n_clusters;
        const double ds_s = lsps.ds_ns * 1e-9;
        const double d2r = pi / 180.0;
        const double asd_deg = cfg.asd_deg >= 0.0 ? cfg.asd_deg : lsps.asa_deg;
        const double esd_deg = cfg.esd_deg >= 0.0 ? cfg.esd_deg : lsps.esa_deg;

        const auto delays = generate_delays(n, ds_s, cfg.r_tau, rng);
        std::vector<double> shadow;
        const auto powers = generate_powers(delays, ds_s, cfg.r_tau,
                                            cfg.per_cluster_shadow_db, rng, &shadow);

        // Inter-cluster spread: the total splits in quadrature with the
        // intra-cluster share when the default split is in use.
        const bool default_split = cfg.c_asa_deg < 0.0 && cfg.c_esa_deg < 0.0;
        const double inter_frac =
            default_split ? std::sqrt(1.0 - 1.0 / static_cast<double>(n)) : 1.0;

        const auto aoa = generate_cluster_azimuths(n, lsps.asa_deg * inter_frac * d2r,
                                                   los.arrival.azimuth(), powers, rng);
        const auto eoa = generate_cluster_zeniths(n, lsps.esa_deg * inter_frac * d2r,
                                                  los.arrival.zenith(), powers, rng);
        const auto aod = generate_cluster_azimuths(n, asd_deg * inter_frac * d2r,
                                                   los.departure.azimuth(), powers, rng);
        const auto eod = generate_cluster_zeniths(n, esd_deg * inter_frac * d2r,
                                                  los.departure.zenith(), powers, rng);

        const IntraSpreads cs = intra_spreads(cfg, lsps, asd_deg, esd_deg);

        ClusterSet set;
        set.timestamp_s = timestamp_s;
        set.lsps = lsps;
        set.clusters.reserve(static_cast<std::size_t>(n));
        // Normalized delays use the same expression the per-step normalization
        // applies, so snapshot 0 is bit-consistent with later snapshots.
        const double min_abs = base_delay_abs_s + delays.front();
        for (int i = 0; i < n; ++i)
        {
            ClusterState c;
            c.id = set.next_id++;
            c.delay_abs_s = base_delay_abs_s + delays[static_cast<std::size_t>(i)];
            c.delay_s = c.delay_abs_s - min_abs;
            c.power_lin = powers[static_cast<std::size_t>(i)];
            c.aoa_az = aoa[static_cast<std::size_t>(i)];
            c.eoa_zen = eoa[static_cast<std::size_t>(i)];
            c.aod_az = aod[static_cast<std::size_t>(i)];
            c.eod_zen = eod[static_cast<std::size_t>(i)];
            c.shadow_db = shadow[static_cast<std::size_t>(i)];
            c.birth_time_s = timestamp_s;
            ClusterMeanAngles mean{c.aod_az, c.eod_zen, c.aoa_az, c.eoa_zen};
            c.rays = spawn_rays(mean, cs.asd, cs.esd, cs.asa, cs.esa,
                                cfg.rays_per_cluster, cfg.xpr, rng, cfg.ray_offsets);
            set.clusters.push_back(std::move(c));
        }
        // The minimum-delay cluster hosts the specular path under LOS.
        set.clusters.front().is_los = true;
        return set;
    }

    void refresh_delays_and_powers(ClusterSet &set, double ds_s, double r_tau)
    {
        const double min_abs = set.min_alive_delay_abs();
        if (!std::isfinite(min_abs))
            return; // nothing alive
        double total = 0.0;
        for (auto &c : set.clusters)
        {
            if (!c.alive)
                continue;
            c.delay_s = c.delay_abs_s - min_abs;
            const double z = std::isnan(c.shadow_db) ? 0.0 : c.shadow_db;
            c.power_lin = std::exp(-c.delay_s * (r_tau - 1.0) / (r_tau * ds_s)) *
                          std::pow(10.0, -z / 10.0);
            total += c.power_lin;
        }
        if (total <= 0.0)
            return;
        for (auto &c : set.clusters)
            if (c.alive)
                c.power_lin /= total;
    }

} // namespace ch5gr
