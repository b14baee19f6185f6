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
//
// Command-line front end. Talks to the simulator exclusively through the
// shared library's C API.

#include "ch5gr.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace
{
    struct ConfigDeleter
    {
        void operator()(ch5gr_config *c) const { ch5gr_config_free(c); }
    };
    using ConfigPtr = std::unique_ptr<ch5gr_config, ConfigDeleter>;

    int report(ch5gr_status status)
    {
        if (status != CH5GR_OK)
            std::fprintf(stderr, "error: %s\n", ch5gr_last_error());
        return static_cast<int>(status);
    }

    ConfigPtr load_config(const std::string &path, int &exit_code)
    {
        ch5gr_config *raw = nullptr;
        const ch5gr_status st = ch5gr_config_load(path.c_str(), &raw);
        if (st != CH5GR_OK)
        {
            exit_code = report(st);
            return nullptr;
        }
        return ConfigPtr(raw);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"ch5gr: cluster-based time-variant channel simulator for 5G railway "
                 "links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ch5gr_version()));

    // simulate
    auto *sim = app.add_subcommand("simulate", "run one link and write trace + logs");
    std::string sim_config, sim_out;
    std::uint64_t sim_seed = 0;
    sim->add_option("--config", sim_config, "INI configuration file")->required();
    sim->add_option("--seed", sim_seed, "master seed")->default_val(0);
    sim->add_option("--out", sim_out, "output directory")->required();

    // analyze
    auto *ana = app.add_subcommand("analyze", "extract channel statistics");
    std::string ana_in, ana_metric = "all", ana_out, ana_config;
    ana->add_option("--in", ana_in, "trace file (.cir) or MPC record CSV")->required();
    ana->add_option("--metric", ana_metric,
                    "pl sf apdp rmsds kfactor tpcc stationarity as cluster markov all")
        ->default_val("all");
    ana->add_option("--out", ana_out, "output directory")->required();
    ana->add_option("--config", ana_config, "INI configuration (for geometry/speed)");

    // validate
    auto *val = app.add_subcommand("validate", "closed-loop statistical validation");
    std::string val_config, val_out, val_reference;
    std::uint64_t val_seed = 0;
    val->add_option("--config", val_config, "INI configuration file")->required();
    val->add_option("--seed", val_seed, "master seed")->default_val(0);
    val->add_option("--reference", val_reference,
                    "reference CSV (metric,log_mu,log_sigma,tolerance_rel,assert)");
    val->add_option("--out", val_out, "output directory")->required();

    // cdl
    auto *cdl = app.add_subcommand("cdl", "inspect or export builtin CDL tables");
    bool cdl_list = false;
    std::string cdl_export, cdl_out;
    cdl->add_flag("--list", cdl_list, "list builtin table names");
    cdl->add_option("--export", cdl_export, "export a builtin table as CSV");
    cdl->add_option("--out", cdl_out, "CSV path for --export (default NAME.csv)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return static_cast<int>(CH5GR_ERR_USAGE);
    }

    if (sim->parsed())
    {
        int code = 0;
        ConfigPtr cfg = load_config(sim_config, code);
        if (!cfg)
            return code;
        const ch5gr_status st = ch5gr_simulate(cfg.get(), sim_seed, sim_out.c_str());
        if (st == CH5GR_OK)
            std::printf("simulate: wrote trace.cir, evolution.csv, mpc_ground_truth.csv, "
                        "manifest.json to %s\n",
                        sim_out.c_str());
        return report(st);
    }

    if (ana->parsed())
    {
        ConfigPtr cfg;
        if (!ana_config.empty())
        {
            int code = 0;
            cfg = load_config(ana_config, code);
            if (!cfg)
                return code;
        }
        const ch5gr_status st =
            ch5gr_analyze(ana_in.c_str(), ana_metric.c_str(), cfg.get(), ana_out.c_str());
        if (st == CH5GR_OK)
            std::printf("analyze: metric '%s' written to %s\n", ana_metric.c_str(),
                        ana_out.c_str());
        return report(st);
    }

    if (val->parsed())
    {
        int code = 0;
        ConfigPtr cfg = load_config(val_config, code);
        if (!cfg)
            return code;
        const ch5gr_status st =
            ch5gr_validate(cfg.get(), val_seed,
                           val_reference.empty() ? nullptr : val_reference.c_str(),
                           val_out.c_str());
        if (st == CH5GR_OK)
            std::printf("validate: PASS (report in %s)\n", val_out.c_str());
        else if (st == CH5GR_ERR_VALIDATION)
            std::fprintf(stderr, "validate: FAIL (report in %s)\n", val_out.c_str());
        return report(st);
    }

    if (cdl->parsed())
    {
        if (cdl_list != cdl_export.empty())
        {
            std::fprintf(stderr, "error: cdl needs exactly one of --list or --export\n");
            return static_cast<int>(CH5GR_ERR_USAGE);
        }
        if (cdl_list)
        {
            char buf[1024];
            const ch5gr_status st = ch5gr_cdl_list(buf, sizeof(buf));
            if (st == CH5GR_OK)
                std::fputs(buf, stdout);
            return report(st);
        }
        const std::string out = cdl_out.empty() ? cdl_export + ".csv" : cdl_out;
        const ch5gr_status st = ch5gr_cdl_export(cdl_export.c_str(), out.c_str());
        if (st == CH5GR_OK)
            std::printf("cdl: wrote %s\n", out.c_str());
        return report(st);
    }

    return static_cast<int>(CH5GR_ERR_USAGE);
}
