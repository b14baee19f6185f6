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

#ifndef ch5gr_cdl_H
#define ch5gr_cdl_H

#include "ch5gr/cluster_gen.hpp"
#include "ch5gr/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ch5gr
{
    // Whether table EOA values count from zenith or from the horizon.
    enum class EoaConvention
    {
        Zenith,
        Horizon,
    };

    struct CdlRow
    {
        double delay_ns = 0.0;
        double power_db = 0.0; // relative, <= 0
        double aoa_deg = 0.0;
        double eoa_deg = 0.0;
        bool los = false;
    };

    // Clustered-delay-line table; rows keep their published order.
    struct CdlTable
    {
        std::string name;
        std::vector<CdlRow> rows;
        double c_asa_deg = 2.0; // per-cluster ray spreads for instantiation
        double c_esa_deg = 2.0;

        void validate() const; // row 1 delay 0, powers <= 0 dB

        // Linear LOS-row power over the summed NLOS-row powers.
        double implied_k_factor() const;
    };

    // The fitted rural 5G-R table and the RMa CDL-D five-row comparison.
    std::vector<CdlTable> builtin_tables();
    const CdlTable *find_builtin(const std::string &name);

    CdlTable load_cdl_csv(const std::filesystem::path &path);
    void save_cdl_csv(const CdlTable &table, const std::filesystem::path &path);

    // All delays multiplied by `factor`; powers and angles untouched.
    CdlTable scale_normalized_delays(const CdlTable &table, double factor);

    struct CdlInstance
    {
        ClusterSet set;
        double k_factor_linear = 0.0;
    };

    // One cluster per row; linear powers normalized; rays spawned around the
    // row angles; departure angles default to the geometric LOS direction.
    CdlInstance instantiate_cdl(const CdlTable &table, const ScenarioConfig &scenario,
                                int rays_per_cluster, Rng &rng,
                                EoaConvention convention = EoaConvention::Zenith);

} // namespace ch5gr

#endif
