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

#ifndef ch5gr_pipeline_H
#define ch5gr_pipeline_H

#include "ch5gr/analysis.hpp"
#include "ch5gr/config.hpp"
#include "ch5gr/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ch5gr
{
    // Full in-memory simulation of one link: sampled LSPs (or CDL table),
    // cluster evolution, coefficient synthesis, ground-truth MPC records.
    struct SimOutputs
    {
        CirTrace trace;
        EvolutionLog evolution;
        std::vector<MpcEntry> ground_truth;
        LspSample lsps;
        double k_factor_linear = -1.0; // < 0: no specular path (NLOS)
        double sf_db = 0.0;
    };

    SimOutputs run_simulation(const SimConfig &cfg, std::uint64_t seed);

    struct SimulateFiles
    {
        std::filesystem::path trace;
        std::filesystem::path evolution;
        std::filesystem::path mpc;
        std::filesystem::path manifest;
    };

    // simulate -> trace.cir + evolution.csv + mpc_ground_truth.csv + manifest.
    // Outputs are staged and renamed; errors leave no partial files.
    SimulateFiles cmd_simulate(const SimConfig &cfg, std::uint64_t seed,
                               const std::filesystem::path &out_dir,
                               const std::string &config_description = "");

    // analyze -> one CSV set per requested metric plus manifest. `cfg` supplies
    // geometry/speed for the metrics that need them (pl, sf, stationarity,
    // markov step granularity); pass nullptr when unavailable.
    void cmd_analyze(const std::filesystem::path &input, const std::string &metric,
                     const SimConfig *cfg, const std::filesystem::path &out_dir);

    struct ReferenceRow
    {
        std::string metric; // rmsds | asa | esa | stationarity
        double log_mu = 0.0;
        double log_sigma = 0.0;
        double tolerance_rel = 0.15;
        bool asserted = true;
    };

    std::vector<ReferenceRow> default_reference(const SimConfig &cfg);
    std::vector<ReferenceRow> load_reference_csv(const std::filesystem::path &path);

    struct ValidationRow
    {
        std::string metric;
        double target_mu = 0.0;
        double target_sigma = 0.0;
        double target_lin_mean = 0.0;
        double fitted_mu = 0.0;
        double fitted_sigma = 0.0;
        double fitted_lin_mean = 0.0;
        double tolerance_rel = 0.15;
        bool asserted = true;
        bool passed = true;
    };

    struct ValidationReport
    {
        std::vector<ValidationRow> rows;
        bool passed = true;
    };

    // Closed-loop LSP validation: simulates n_links independent links, fits
    // the recovered RMS DS / ASA / ESA distributions (and the stationarity
    // distance from evolved links), compares against the reference.
    ValidationReport cmd_validate(const SimConfig &cfg, std::uint64_t seed,
                                  const std::optional<std::filesystem::path> &reference_csv,
                                  const std::filesystem::path &out_dir);

    // Tool identity, used in manifests and the C API.
    const char *tool_version();

    // Writes `text` to path via a temp file and atomic rename.
    void atomic_write_text(const std::filesystem::path &path, const std::string &text);

    // Empirical quantile table (1000 rows) as "p,value" CSV text.
    std::string cdf_table_csv(std::vector<double> values, const std::string &value_label);

} // namespace ch5gr

#endif
