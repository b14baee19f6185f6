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

#include "ch5gr/pipeline.hpp"

#include "ch5gr/cir.hpp"
#include "ch5gr/mpc_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ch5gr
{
    const char *tool_version()
    {
        return "0.1.0";
    }

    void atomic_write_text(const std::filesystem::path &path, const std::string &text)
    {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream os(tmp, std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot open for writing: " + tmp.string());
            os << text;
            if (!os)
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    std::string cdf_table_csv(std::vector<double> values, const std::string &value_label)
    {
        std::sort(values.begin(), values.end());
        std::ostringstream os;
        os.precision(12);
        os << "p," << value_label << '\n';
        if (values.empty())
            return os.str();
        const auto n = static_cast<double>(values.size());
        for (int k = 1; k <= 1000; ++k)
        {
            const double p = k / 1000.0;
            // Linear interpolation on the order statistics.
            const double pos = p * (n - 1.0);
            const auto lo = static_cast<std::size_t>(pos);
            const auto hi = std::min(lo + 1, values.size() - 1);
            const double frac = pos - static_cast<double>(lo);
            const double q = values[lo] * (1.0 - frac) + values[hi] * frac;
            os << p << ',' << q << '\n';
        }
        return os.str();
    }

    namespace
    {
        std::string hex64(std::uint64_t v)
        {
            std::ostringstream os;
            os << "0x" << std::hex << v;
            return os.str();
        }

        void write_manifest(const std::filesystem::path &path, const std::string &command,
                            std::uint64_t seed, std::uint64_t cfg_hash,
                            const std::vector<std::string> &inputs,
                            const std::vector<std::string> &outputs, double duration_s)
        {
            nlohmann::json j;
            j["tool"] = "ch5gr";
            j["version"] = tool_version();
            j["command"] = command;
            j["seed"] = seed;
            j["config_hash"] = hex64(cfg_hash);
            j["inputs"] = inputs;
            j["outputs"] = outputs;
            j["duration_s"] = duration_s;
            atomic_write_text(path, j.dump(2) + "\n");
        }

        CdlTable resolve_cdl_table(const CdlConfig &cdl)
        {
            CdlTable table;
            if (const CdlTable *builtin = find_builtin(cdl.table))
                table = *builtin;
            else
                table = load_cdl_csv(cdl.table);
            if (cdl.delay_scale != 1.0)
                table = scale_normalized_delays(table, cdl.delay_scale);
            return table;
        }
    }

    SimOutputs run_simulation(const SimConfig &cfg, std::uint64_t seed)
    {
        cfg.validate();
        const ScenarioConfig &sc = cfg.scenario;
        const double dt = 1.0 / sc.snapshot_rate_hz;
        const int n_snapshots = std::max(sc.n_snapshots(), 1);
        const Vec3 velocity = sc.ut_velocity();

        Rng lsp_rng(seed, "lsp");
        Rng cluster_rng(seed, "clusters");
        Rng shadow_rng(seed, "shadow");

        LspSample lsps = sample_lsps(sc.lsp, lsp_rng);
        const double sf_db = sample_shadow_fading(sc.path_loss.sf_sigma_db, shadow_rng);

        const LosDirections los0 = los_directions(sc.bs_position, sc.ut_position);
        const double base_delay =
            (sc.ut_position - sc.bs_position).norm() / speed_of_light_mps;

        ClusterSet initial;
        double k_linear = -1.0;
        bool profile_powers = true;
        RenderOptions render = cfg.render;
        if (cfg.source == ClusterSource::Cdl)
        {
            const CdlTable table = resolve_cdl_table(cfg.cdl);
            CdlInstance inst = instantiate_cdl(table, sc, cfg.clusters.rays_per_cluster,
                                               cluster_rng, cfg.cdl.eoa_convention);
            initial = std::move(inst.set);
            profile_powers = false;    // table powers are authoritative
            render.table_powers = true;
            if (sc.propagation == Propagation::Los)
                k_linear = inst.k_factor_linear;
        }
        else
        {
            initial = generate_cluster_set(cfg.clusters, lsps, los0, base_delay, 0.0,
                                           cluster_rng);
            if (sc.propagation == Propagation::Los)
                k_linear = std::pow(10.0, lsps.k_db / 10.0);
        }

        Evolver evolver(std::move(initial), cfg.evolution, cfg.clusters, los0,
                        lsps.ds_ns * 1e-9, seed, "evolution", profile_powers);

        TraceRenderer renderer(sc, render);
        CirTrace trace = renderer.make_trace(n_snapshots);
        trace.seed = seed;
        trace.config_hash = config_hash(cfg);

        SimOutputs out{std::move(trace), {}, {}, lsps, k_linear, sf_db};
        KCombination kc =
            k_linear >= 0.0 ? combine_los_scales(k_linear) : KCombination{1.0, 0.0};
        if (render.table_powers)
            kc.nlos_scale = 1.0;

        for (int t = 0; t < n_snapshots; ++t)
        {
            const double time_s = t * dt;
            if (t > 0)
                evolver.step(dt, velocity);

            const Vec3 ut_pos = sc.ut_position + velocity * time_s;
            LinkGeometry geom = LinkGeometry::make(sc, ut_pos);
            if (render.table_powers)
            {
                // The table's LOS row defines the specular directions.
                for (const auto &c : evolver.set().clusters)
                    if (c.alive && c.specular_only)
                    {
                        geom.los = LosDirections{SphericalAngles(c.aod_az, c.eod_zen),
                                                 SphericalAngles(c.aoa_az, c.eoa_zen)};
                        break;
                    }
            }

            double pl_db = 0.0;
            if (sc.apply_path_loss)
            {
                const double d_eff = std::max(geom.d_3d_m, sc.path_loss.ref_distance_m);
                pl_db = path_loss_db(sc.path_loss, d_eff, sf_db);
            }

            renderer.render_snapshot(out.trace, static_cast<std::uint32_t>(t), time_s,
                                     evolver.set(), k_linear, geom, pl_db);

            const auto records =
                mpc_records_from_clusters(evolver.set(), t, kc.nlos_scale);
            out.ground_truth.insert(out.ground_truth.end(), records.begin(),
                                    records.end());
            if (kc.los_scale > 0.0)
            {
                MpcEntry m;
                m.snapshot = t;
                m.amplitude = {kc.los_scale, 0.0};
                m.delay_s = 0.0;
                m.aoa_rad = geom.los.arrival.azimuth();
                m.eoa_rad = geom.los.arrival.zenith();
                for (const auto &c : evolver.set().clusters)
                    if (c.alive && c.is_los)
                    {
                        m.cluster_label = static_cast<int>(c.id);
                        break;
                    }
                out.ground_truth.push_back(m);
            }
        }
        out.evolution = evolver.log();
        return out;
    }

    SimulateFiles cmd_simulate(const SimConfig &cfg, std::uint64_t seed,
                               const std::filesystem::path &out_dir,
                               const std::string &config_description)
    {
        const auto t0 = std::chrono::steady_clock::now();
        SimOutputs sim = run_simulation(cfg, seed); // compute before any output
        std::filesystem::create_directories(out_dir);

        SimulateFiles files;
        files.trace = out_dir / "trace.cir";
        files.evolution = out_dir / "evolution.csv";
        files.mpc = out_dir / "mpc_ground_truth.csv";
        files.manifest = out_dir / "manifest.json";

        sim.trace.save(files.trace);

        std::ostringstream evo;
        evo.precision(12);
        sim.evolution.write_csv(evo);
        atomic_write_text(files.evolution, evo.str());

        save_mpc_csv(sim.ground_truth, files.mpc);

        const double duration =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(files.manifest, "simulate", seed, config_hash(cfg),
                       {config_description.empty() ? "<config>" : config_description},
                       {files.trace.string(), files.evolution.string(), files.mpc.string()},
                       duration);
        return files;
    }

} // namespace ch5gr
