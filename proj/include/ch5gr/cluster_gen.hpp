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

#ifndef ch5gr_cluster_gen_H
#define ch5gr_cluster_gen_H

#include "ch5gr/geometry.hpp"
#include "ch5gr/rng.hpp"
#include "ch5gr/scenario.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ch5gr
{
    // One ray inside a cluster: coupled angles, four polarization phases in
    // (-pi, pi], and the cross-polarization power ratio (linear).
    struct Ray
    {
        double aod_az = 0.0;
        double eod_zen = 0.0;
        double aoa_az = 0.0;
        double eoa_zen = 0.0;
        double phase_tt = 0.0;
        double phase_tp = 0.0;
        double phase_pt = 0.0;
        double phase_pp = 0.0;
        double xpr_linear = 1.0;
    };

    struct ClusterState
    {
        std::uint64_t id = 0;
        double delay_abs_s = 0.0;  // propagation delay, drives the updates
        double delay_s = 0.0;      // min-normalized excess delay
        double power_lin = 0.0;    // normalized share, sums to 1 over the set
        double aod_az = 0.0;
        double eod_zen = 0.0;
        double aoa_az = 0.0;
        double eoa_zen = 0.0;
        // Per-cluster shadowing Z_n, fixed at birth; NaN = not yet drawn.
        double shadow_db = std::numeric_limits<double>::quiet_NaN();
        double birth_time_s = 0.0;
        double lifetime_s = 0.0;   // sampled cap, 0 = none
        bool is_los = false;
        // The cluster's power is carried by the deterministic specular path
        // (CDL LOS rows); its rays are bookkeeping only and are not rendered.
        bool specular_only = false;
        bool alive = true;
        std::vector<Ray> rays;
    };

    struct ClusterSet
    {
        std::vector<ClusterState> clusters;
        double timestamp_s = 0.0;
        LspSample lsps;
        std::uint64_t next_id = 0;

        std::size_t n_alive() const;
        double min_alive_delay_abs() const;
    };

    struct XprModel
    {
        double mu_db = 8.0;
        double sigma_db = 3.0;
    };

    struct ClusterGenConfig
    {
        int n_clusters = 5;
        int rays_per_cluster = 20;
        double r_tau = 2.3;                 // delay scaling, > 1
        double per_cluster_shadow_db = 3.0; // zeta
        XprModel xpr;
        // Intra-cluster ray spreads; <0 selects the total/sqrt(N) split.
        double c_asa_deg = -1.0;
        double c_esa_deg = -1.0;
        double c_asd_deg = -1.0;
        double c_esd_deg = -1.0;
        // Departure-side totals; <0 mirrors the arrival spreads.
        double asd_deg = -1.0;
        double esd_deg = -1.0;
        std::vector<double> ray_offsets; // override of the unit-RMS table

        void validate() const;
    };

    // N exponentially profiled delays, sorted, min-subtracted to zero. r_tau
    // must exceed 1.
    std::vector<double> generate_delays(int n, double ds_s, double r_tau, Rng &rng);

    // Exponential power profile with per-cluster lognormal shadowing,
    // normalized to unit sum. Optionally reports the shadowing draws so they
    // can be kept with the clusters.
    std::vector<double> generate_powers(std::span<const double> delays_s, double ds_s,
                                        double r_tau, double zeta_db, Rng &rng,
                                        std::vector<double> *shadow_db_out = nullptr);

    // Cluster mean azimuths: wrapped Gaussian about `center`, spread chosen so
    // the power-weighted empirical spread of the finite set is unbiased.
    std::vector<double> generate_cluster_azimuths(int n, double spread_rad, double center,
                                                  std::span<const double> powers, Rng &rng);

    // Cluster mean zeniths: Laplacian about `center`, same finite-set spread
    // correction, clamped to (0, pi).
    std::vector<double> generate_cluster_zeniths(int n, double spread_rad, double center,
                                                 std::span<const double> powers, Rng &rng);

    // Quantile-midpoint offsets of a unit-RMS Laplacian, symmetric, zero-sum.
    std::vector<double> ray_offset_table(int m);

    struct ClusterMeanAngles
    {
        double aod_az = 0.0;
        double eod_zen = 0.0;
        double aoa_az = 0.0;
        double eoa_zen = 0.0;
    };

    // M rays at mean + offset*spread with independently permuted offsets per
    // angle dimension, i.i.d. phases on (-pi, pi], and lognormal XPR draws.
    std::vector<Ray> spawn_rays(const ClusterMeanAngles &mean, double c_asd_rad,
                                double c_esd_rad, double c_asa_rad, double c_esa_rad,
                                int m, const XprModel &xpr, Rng &rng,
                                std::span<const double> offset_override = {});

    struct LosDirections
    {
        SphericalAngles departure; // BS -> UT
        SphericalAngles arrival;   // UT -> BS
    };

    LosDirections los_directions(const Vec3 &bs_pos, const Vec3 &ut_pos);

    // Full small-scale generation step: delays, powers, mean angles, rays.
    // Delays are anchored at base_delay_abs_s (the LOS propagation delay).
    ClusterSet generate_cluster_set(const ClusterGenConfig &cfg, const LspSample &lsps,
                                    const LosDirections &los, double base_delay_abs_s,
                                    double timestamp_s, Rng &rng);

    // Re-derives normalized delays and the unit power sum over alive clusters.
    void refresh_delays_and_powers(ClusterSet &set, double ds_s, double r_tau);

} // namespace ch5gr

#endif
