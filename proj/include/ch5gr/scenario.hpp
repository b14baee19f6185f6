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

#ifndef ch5gr_scenario_H
#define ch5gr_scenario_H

#include "ch5gr/antenna.hpp"
#include "ch5gr/geometry.hpp"
#include "ch5gr/rng.hpp"

#include <string>

namespace ch5gr
{
    // Log-distance path loss: L(d) = A + 10 n log10(d/d0) + X_sigma.
    struct PathLossModel
    {
        double intercept_db = 0.0;     // A
        double exponent = 2.0;         // n
        double ref_distance_m = 1.0;   // d0
        double sf_sigma_db = 0.0;      // std of the shadow-fading term
    };

    // Requires d >= d0 (near-field data is excluded from the model).
    double path_loss_db(const PathLossModel &model, double distance_m, double sf_db);

    // One zero-mean Gaussian shadow-fading draw, dB.
    double sample_shadow_fading(double sigma_db, Rng &rng);

    // Natural-log parameterization: value = exp(N(log_mu, log_sigma^2)).
    struct LogNormalSpec
    {
        double log_mu = 0.0;
        double log_sigma = 0.0;
        double mean() const; // exp(mu + sigma^2/2)
    };

    struct NormalSpec
    {
        double mu = 0.0;
        double sigma = 0.0;
    };

    // Marginal large-scale parameter distributions (fitted rural 5G-R values
    // are installed by the scenario presets below).
    struct LspDistributions
    {
        LogNormalSpec ds_ns{4.33, 0.39};          // RMS delay spread, ln(ns)
        LogNormalSpec asa_deg{1.78, 1.45};        // azimuth spread of arrival, ln(deg)
        LogNormalSpec esa_deg{0.48, 0.65};        // elevation spread of arrival, ln(deg)
        NormalSpec k_db{0.66, 2.78};              // Rice K-factor, dB
        NormalSpec sf_db{0.0, 2.86};              // shadow fading, dB
        LogNormalSpec lifetime_s{0.88, 0.92};     // cluster lifetime, ln(s)
        LogNormalSpec stationarity_m{2.16, 0.29}; // stationarity distance, ln(m)
    };

    struct LspSample
    {
        double ds_ns = 0.0;
        double asa_deg = 0.0;
        double esa_deg = 0.0;
        double k_db = 0.0;
        double sf_db = 0.0;
    };

    LspSample sample_lsps(const LspDistributions &dists, Rng &rng);

    enum class AreaTag
    {
        Rural5GRA,
        Rural5GRB,
        Custom,
    };

    enum class Propagation
    {
        Los,
        Nlos,
    };

    struct AntennaConfig
    {
        PatternKind kind = PatternKind::Isotropic;
        double gain_dbi = 0.0;
        double beamwidth_3db_deg = 65.0;   // panel only
        double front_back_db = 30.0;       // panel only
        double slant_deg = 45.0;           // panel only
        int n_elements = 1;                // >1 selects a uniform circular array
        double array_radius_m = -1.0;      // <0: lambda/2 chord spacing default
    };

    // Full link/scenario description. Defaults follow the rural 5G-R test
    // line configuration: 2160 MHz carrier, 10 MHz bandwidth, 513 frequency
    // points, 26 m / 4.2 m antenna heights, 80 km/h.
    struct ScenarioConfig
    {
        AreaTag area = AreaTag::Rural5GRA;
        Propagation propagation = Propagation::Los;

        double carrier_hz = 2.16e9;
        double bandwidth_hz = 10e6;
        int n_freq_points = 513;

        Vec3 bs_position{0.0, 0.0, 26.0};
        Vec3 ut_position{500.0, 20.0, 4.2};
        double ut_speed_mps = 80.0 / 3.6;
        double ut_heading_rad = 0.0; // direction of travel, x-y plane

        double duration_s = 5.0;
        double snapshot_rate_hz = 16.0;

        AntennaConfig tx_antenna{PatternKind::DirectionalPanel, 17.5};
        AntennaConfig rx_antenna{PatternKind::OmniVertical, 3.0};

        PathLossModel path_loss{49.47, 2.22, 1.0, 2.86};
        LspDistributions lsp;

        double near_field_cutoff_m = 100.0;
        bool apply_path_loss = true;

        double wavelength_m() const { return speed_of_light_mps / carrier_hz; }
        Vec3 ut_velocity() const;
        int n_snapshots() const;

        void validate() const; // throws std::invalid_argument on bad fields
    };

    // Named parameter presets for the two measured areas. Area B swaps in its
    // own PL/SF/K fits; DS/ASA/ESA are shared.
    ScenarioConfig scenario_preset(AreaTag area);

    std::string to_string(AreaTag area);
    std::string to_string(Propagation p);

} // namespace ch5gr

#endif
