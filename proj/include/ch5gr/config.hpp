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

#ifndef ch5gr_config_H
#define ch5gr_config_H

#include "ch5gr/cdl.hpp"
#include "ch5gr/cir.hpp"
#include "ch5gr/cluster_gen.hpp"
#include "ch5gr/evolution.hpp"
#include "ch5gr/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace ch5gr
{
    // Raised on malformed or unknown configuration input; messages always
    // name the offending [section] key.
    class ConfigError : public std::runtime_error
    {
    public:
        explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Minimal INI document: [section] lines, key = value pairs, '#' and ';'
    // comments. Keys are kept sorted so serialization is canonical.
    class IniDoc
    {
    public:
        static IniDoc parse_string(const std::string &text);
        static IniDoc parse_file(const std::filesystem::path &path);

        std::optional<std::string> get(const std::string &section,
                                       const std::string &key) const;
        void set(const std::string &section, const std::string &key,
                 const std::string &value);

        std::string serialize() const;

        const std::map<std::string, std::map<std::string, std::string>> &sections() const
        {
            return sections_;
        }

    private:
        std::map<std::string, std::map<std::string, std::string>> sections_;
    };

    struct AnalysisConfig
    {
        double tpcc_threshold = 0.8;
        double mcd_xi = 1.0;
        double track_threshold = 0.06;
        double window_wavelengths = 40.0; // APDP / large-scale sliding window
        // NaN = estimate per trace (median bin power).
        double noise_floor_db = std::numeric_limits<double>::quiet_NaN();
        int kpm_k_max = 10;

        void validate() const;
    };

    struct ValidateConfig
    {
        int n_links = 200;
        int drops_per_link = 24;
        int calibration_drops = 8000;
        double tolerance_rel = 0.15;
        int stationarity_links = 4;
        double stationarity_duration_s = 30.0;
        bool assert_stationarity = false;
        // Per-cluster shadowing is disabled inside the closure drops.
        double closure_shadow_db = 0.0;

        void validate() const;
    };

    struct CdlConfig
    {
        std::string table = "5G-R-Rural";
        double delay_scale = 1.0;
        EoaConvention eoa_convention = EoaConvention::Zenith;
    };

    // Where the initial small-scale cluster set comes from.
    enum class ClusterSource
    {
        Lsp, // stochastic generation from the sampled LSPs
        Cdl, // instantiate the configured CDL table
    };

    // Everything one run needs; maps 1:1 onto the INI sections.
    struct SimConfig
    {
        ScenarioConfig scenario;
        ClusterGenConfig clusters;
        EvolutionParams evolution;
        AnalysisConfig analysis;
        ValidateConfig validate_cfg;
        CdlConfig cdl;
        RenderOptions render;
        ClusterSource source = ClusterSource::Lsp;

        void validate() const;
    };

    // Binding between the INI schema and SimConfig. load_sim_config rejects
    // unknown sections/keys and requires [scenario] profile.
    SimConfig load_sim_config(const IniDoc &doc);
    SimConfig load_sim_config_file(const std::filesystem::path &path);
    IniDoc to_ini(const SimConfig &cfg);

    // FNV-1a over the canonical serialization.
    std::uint64_t config_hash(const SimConfig &cfg);

} // namespace ch5gr

#endif
