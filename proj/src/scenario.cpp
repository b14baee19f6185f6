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

#include "ch5gr/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace ch5gr
{
    double path_loss_db(const PathLossModel &model, double distance_m, double sf_db)
    {
        if (model.ref_distance_m <= 0.0)
            throw std::invalid_argument("path_loss_db: reference distance must be > 0");
        if (distance_m < model.ref_distance_m)
            throw std::domain_error("path_loss_db: distance below reference distance");
        return model.intercept_db +
               10.0 * model.exponent * std::log10(distance_m / model.ref_distance_m) +
               sf_db;
    }

    double sample_shadow_fading(double sigma_db, Rng &rng)
    {
        if (sigma_db < 0.0)
            throw std::invalid_argument("sample_shadow_fading: sigma must be >= 0");
        if (sigma_db == 0.0)
            return 0.0;
        return rng.normal(0.0, sigma_db);
    }

    double LogNormalSpec::mean() const
    {
        return std::exp(log_mu + 0.5 * log_sigma * log_sigma);
    }

    LspSample sample_lsps(const LspDistributions &dists, Rng &rng)
    {
        LspSample s;
        s.ds_ns = rng.lognormal(dists.ds_ns.log_mu, dists.ds_ns.log_sigma);
        s.asa_deg = rng.lognormal(dists.asa_deg.log_mu, dists.asa_deg.log_sigma);
        s.esa_deg = rng.lognormal(dists.esa_deg.log_mu, dists.esa_deg.log_sigma);
        s.k_db = rng.normal(dists.k_db.mu, dists.k_db.sigma);
        s.sf_db = rng.normal(0.0, dists.sf_db.sigma);
        return s;
    }

    Vec3 ScenarioConfig::ut_velocity() const
    {
        return {ut_speed_mps * std::cos(ut_heading_rad),
                ut_speed_mps * std::sin(ut_heading_rad), 0.0};
    }

    int ScenarioConfig::n_snapshots() const
    {
        return static_cast<int>(std::lround(duration_s * snapshot_rate_hz));
    }

    void ScenarioConfig::validate() const
    {
        if (carrier_hz <= 0.0)
            throw std::invalid_argument("scenario: carrier frequency must be > 0");
        if (bandwidth_hz <= 0.0)
            throw std::invalid_argument("scenario: bandwidth must be > 0");
        if (n_freq_points < 2)
            throw std::invalid_argument("scenario: need at least 2 frequency points");
        if (snapshot_rate_hz <= 0.0)
            throw std::invalid_argument("scenario: snapshot rate must be > 0");
        if (duration_s <= 0.0)
            throw std::invalid_argument("scenario: duration must be > 0");
        if (bs_position.z <= 0.0 || ut_position.z <= 0.0)
            throw std::invalid_argument("scenario: antenna heights must be > 0");
        if (ut_speed_mps < 0.0)
            throw std::invalid_argument("scenario: speed must be >= 0");
        if (lsp.ds_ns.log_sigma < 0.0 || lsp.asa_deg.log_sigma < 0.0 ||
            lsp.esa_deg.log_sigma < 0.0 || lsp.k_db.sigma < 0.0 ||
            lsp.sf_db.sigma < 0.0 || lsp.lifetime_s.log_sigma < 0.0 ||
            lsp.stationarity_m.log_sigma < 0.0)
            throw std::invalid_argument("scenario: distribution sigmas must be >= 0");
        if (tx_antenna.n_elements < 1 || rx_antenna.n_elements < 1)
            throw std::invalid_argument("scenario: element counts must be >= 1");
    }

    ScenarioConfig scenario_preset(AreaTag area)
    {
        ScenarioConfig cfg;
        cfg.area = area;
        switch (area)
        {
        case AreaTag::Rural5GRA:
        case AreaTag::Custom:
            cfg.path_loss = {49.47, 2.22, 1.0, 2.86};
            cfg.lsp.k_db = {0.66, 2.78};
            cfg.lsp.sf_db = {0.0, 2.86};
            break;
        case AreaTag::Rural5GRB:
            cfg.path_loss = {9.47, 4.01, 1.0, 3.40};
            cfg.lsp.k_db = {-1.22, 3.22};
            cfg.lsp.sf_db = {0.0, 3.40};
            break;
        }
        return cfg;
    }

    std::string to_string(AreaTag area)
    {
        switch (area)
        {
        case AreaTag::Rural5GRA:
            return "5G-R-rural-A";
        case AreaTag::Rural5GRB:
            return "5G-R-rural-B";
        case AreaTag::Custom:
            return "custom";
        }
        return "custom";
    }

    std::string to_string(Propagation p)
    {
        return p == Propagation::Los ? "LOS" : "NLOS";
    }

} // namespace ch5gr
