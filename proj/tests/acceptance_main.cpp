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
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured numbers; the binary exits nonzero if any criterion fails.

#include "ch5gr/cir.hpp"
#include "ch5gr/mpc_io.hpp"
#include "ch5gr/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

using namespace ch5gr;

namespace
{
    constexpr double pi = std::numbers::pi;

    int g_failures = 0;

    class Criterion
    {
    public:
        explicit Criterion(std::string label)
            : label_(std::move(label)), start_(std::chrono::steady_clock::now())
        {
        }

        void expect(bool ok, const std::string &detail)
        {
            if (!ok)
                failures_.push_back(detail);
            else
                passes_.push_back(detail);
        }

        void note(const std::string &detail) { passes_.push_back(detail); }

        ~Criterion()
        {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                    .count();
            const bool ok = failures_.empty();
            if (!ok)
                ++g_failures;
            std::printf("[%s] %s (%.2f s)\n", ok ? "PASS" : "FAIL", label_.c_str(),
                        elapsed);
            for (const auto &d : passes_)
                std::printf("        %s\n", d.c_str());
            for (const auto &d : failures_)
                std::printf("     -> FAILED: %s\n", d.c_str());
        }

    private:
        std::string label_;
        std::chrono::steady_clock::time_point start_;
        std::vector<std::string> passes_;
        std::vector<std::string> failures_;
    };

    std::string fmtnum(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return buf;
    }

    std::filesystem::path fresh_dir(const std::string &name)
    {
        const auto p = std::filesystem::temp_directory_path() / "ch5gr_acceptance" / name;
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // 1. Static CDL trace: analyzed RMS DS vs the direct table moments.
    void criterion_cdl_static()
    {
        Criterion c("1. CDL static RMS DS: rendered rural table vs direct moments, 2%");

        // Direct second-central-moment computation over the published rows.
        const CdlTable *table = find_builtin("5G-R-Rural");
        double total = 0.0, m1 = 0.0, m2 = 0.0;
        for (const auto &r : table->rows)
        {
            const double p = std::pow(10.0, r.power_db / 10.0);
            total += p;
            m1 += p * r.delay_ns;
            m2 += p * r.delay_ns * r.delay_ns;
        }
        const double direct_ns = std::sqrt(m2 / total - (m1 / total) * (m1 / total));

        IniDoc doc;
        doc.set("scenario", "profile", "5G-R-rural-A");
        doc.set("scenario", "source", "cdl");
        doc.set("scenario", "ut_speed_mps", "0");
        doc.set("scenario", "duration_s", "1");
        doc.set("scenario", "apply_path_loss", "false");
        doc.set("evolution", "driver", "poisson");
        // One ray per cluster keeps the static tap powers at the table rows.
        doc.set("clusters", "rays_per_cluster", "1");
        const SimConfig cfg = load_sim_config(doc);
        const SimOutputs sim = run_simulation(cfg, 1);

        const CirTrace delay = sim.trace.to_domain(TraceDomain::Delay);
        std::vector<std::complex<float>> taps(delay.n_grid());
        for (std::uint32_t k = 0; k < delay.n_grid(); ++k)
            taps[k] = delay.at(0, k, 0, 0);
        const Pdp pdp = instantaneous_pdp(taps, delay.grid_step(), 0.0);
        std::vector<Pdp> window{pdp};
        const Pdp prof = apdp(window, estimate_noise_floor_db(pdp));
        const double analyzed_ns = rms_delay_spread(prof) * 1e9;

        const double rel = std::fabs(analyzed_ns - direct_ns) / direct_ns;
        c.expect(std::fabs(direct_ns - 154.232) < 0.01,
                 "direct moments " + fmtnum(direct_ns) + " ns");
        c.expect(rel <= 0.02, "analyzed " + fmtnum(analyzed_ns) + " ns vs direct " +
                                  fmtnum(direct_ns) + " ns, rel err " + fmtnum(rel * 100) +
                                  "% (<= 2%)");
    }

    // 2. Markov chain sampling + refit.
    void criterion_markov_fidelity()
    {
        Criterion c("2. Markov fidelity: 1e5 sampled steps refit entrywise to 0.05");
        const MarkovMatrix m = MarkovMatrix::rural5gr();
        Rng rng(20260810, "acceptance/markov");
        std::vector<BdState> states{BdState::S0};
        states.reserve(100001);
        for (int i = 0; i < 100000; ++i)
            states.push_back(
                static_cast<BdState>(rng.categorical(m.row(static_cast<int>(states.back())))));
        const MarkovFit fit = fit_markov(states);
        double worst = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 4; ++col)
                worst = std::max(worst, std::fabs(fit.matrix.at(r, col) - m.at(r, col)));
        c.expect(worst <= 0.05,
                 "max entrywise |p_hat - p| = " + fmtnum(worst) + " (<= 0.05)");
    }

    // 3. Poisson driver long-run mean cluster count.
    void criterion_birth_death_mean()
    {
        Criterion c("3. Birth-death mean: lambda_G/lambda_R = 20 over 1e5 steps, 5%");
        EvolutionParams params;
        params.driver = BdDriver::Poisson;
        params.lambda_g = 20.0;
        params.lambda_r = 1.0;
        params.d_c_m = 30.0;
        params.dt_bd_s = 0.1;
        params.los_persistent = false;
        ClusterGenConfig gen;
        gen.n_clusters = 20;
        gen.rays_per_cluster = 1;
        LspSample lsps;
        lsps.ds_ns = 82.0;
        lsps.asa_deg = 16.26;
        lsps.esa_deg = 2.37;
        const LosDirections los = los_directions(Vec3{0, 0, 26}, Vec3{500, 20, 4.2});
        Rng init(20260810, "acceptance/bd-init");
        ClusterSet set = generate_cluster_set(gen, lsps, los, 2e-6, 0.0, init);
        Evolver ev(std::move(set), params, gen, los, 82e-9, 20260810, "acceptance/bd");
        double acc = 0.0;
        const int steps = 100000;
        for (int i = 0; i < steps; ++i)
            acc += static_cast<double>(ev.step(0.1, Vec3{22.22, 0.0, 0.0}).n_clusters);
        const double mean = acc / steps;
        c.expect(std::fabs(mean - 20.0) / 20.0 <= 0.05,
                 "time-averaged N = " + fmtnum(mean) + " vs 20 (+-5%)");
    }

    // 4. Closed-loop LSP recovery over 200 links.
    void criterion_lsp_recovery()
    {
        Criterion c("4. Closed-loop LSP recovery: 200 links, fitted mu/sigma +-15%, "
                    "DS mean +-15% of 81.79 ns");
        IniDoc doc;
        doc.set("scenario", "profile", "5G-R-rural-A");
        const SimConfig cfg = load_sim_config(doc); // defaults: 200 links, 24 drops
        const auto out = fresh_dir("lsp_recovery");
        const ValidationReport report = cmd_validate(cfg, 20260810, std::nullopt, out);

        struct Target
        {
            const char *metric;
            double mu, sigma;
        };
        const Target targets[] = {{"rmsds", 4.33, 0.39}, {"asa", 1.78, 1.45},
                                  {"esa", 0.48, 0.65}};
        for (const auto &t : targets)
        {
            const ValidationRow *row = nullptr;
            for (const auto &r : report.rows)
                if (r.metric == t.metric)
                    row = &r;
            if (!row)
            {
                c.expect(false, std::string("missing metric ") + t.metric);
                continue;
            }
            const double mu_err = std::fabs(row->fitted_mu - t.mu) / std::fabs(t.mu);
            const double sg_err = std::fabs(row->fitted_sigma - t.sigma) / t.sigma;
            c.expect(mu_err <= 0.15, std::string(t.metric) + " mu_hat " +
                                         fmtnum(row->fitted_mu) + " vs " + fmtnum(t.mu) +
                                         " (" + fmtnum(mu_err * 100) + "% <= 15%)");
            c.expect(sg_err <= 0.15, std::string(t.metric) + " sigma_hat " +
                                         fmtnum(row->fitted_sigma) + " vs " +
                                         fmtnum(t.sigma) + " (" + fmtnum(sg_err * 100) +
                                         "% <= 15%)");
            if (std::string(t.metric) == "rmsds")
            {
                const double lin_err = std::fabs(row->fitted_lin_mean - 81.79) / 81.79;
                c.expect(lin_err <= 0.15, "DS linear mean " + fmtnum(row->fitted_lin_mean) +
                                              " ns vs 81.79 ns (" + fmtnum(lin_err * 100) +
                                              "% <= 15%)");
            }
        }
    }

    // 5. Stationarity identities and the default-parameter magnitude report.
    void criterion_stationarity()
    {
        Criterion c("5. Stationarity: distance = v*dW identity; invariant trace spans; "
                    "default magnitude reported");

        // Identity + spanning region on a time-invariant trace.
        IniDoc doc;
        doc.set("scenario", "profile", "5G-R-rural-A");
        doc.set("scenario", "ut_speed_mps", "0");
        doc.set("scenario", "duration_s", "2");
        doc.set("scenario", "apply_path_loss", "false");
        doc.set("evolution", "driver", "poisson");
        doc.set("clusters", "rays_per_cluster", "4");
        const SimConfig static_cfg = load_sim_config(doc);
        const SimOutputs sim = run_simulation(static_cfg, 5);
        const CirTrace delay = sim.trace.to_domain(TraceDomain::Delay);
        std::vector<Pdp> pdps;
        std::vector<std::complex<float>> taps(delay.n_grid());
        for (std::uint32_t t = 0; t < delay.n_snapshots(); ++t)
        {
            for (std::uint32_t k = 0; k < delay.n_grid(); ++k)
                taps[k] = delay.at(t, k, 0, 0);
            pdps.push_back(instantaneous_pdp(taps, delay.grid_step(),
                                             t * delay.snapshot_interval_s()));
        }
        const double v_check = 22.22;
        const auto regions = stationarity_regions(pdps, 0.8, v_check,
                                                  delay.snapshot_interval_s());
        bool identity = true;
        for (const auto &r : regions)
            identity = identity && (r.distance_m == v_check * r.delta_w_s);
        c.expect(identity, "distance = v * dW holds bitwise on every anchor");
        c.expect(regions.front().delta_w_s ==
                     delay.n_snapshots() * delay.snapshot_interval_s(),
                 "time-invariant trace: anchor 0 spans the whole trace (dW = " +
                     fmtnum(regions.front().delta_w_s) + " s)");
        // 22.22 m/s for 0.41 s covers 9.11 m, the published rounding pair.
        c.expect(std::fabs(22.22 * 0.41 - 9.1102) < 1e-9,
                 "v*dW arithmetic anchor: 22.22 m/s * 0.41 s = 9.1102 m");

        // Default-parameter magnitude, reported not asserted.
        IniDoc ddoc;
        ddoc.set("scenario", "profile", "5G-R-rural-A");
        ddoc.set("scenario", "duration_s", "20");
        ddoc.set("clusters", "rays_per_cluster", "8");
        const SimConfig dyn_cfg = load_sim_config(ddoc);
        const SimOutputs dyn = run_simulation(dyn_cfg, 6);
        const CirTrace ddelay = dyn.trace.to_domain(TraceDomain::Delay);
        std::vector<Pdp> dpdps;
        std::vector<std::complex<float>> dtaps(ddelay.n_grid());
        for (std::uint32_t t = 0; t < ddelay.n_snapshots(); ++t)
        {
            for (std::uint32_t k = 0; k < ddelay.n_grid(); ++k)
                dtaps[k] = ddelay.at(t, k, 0, 0);
            dpdps.push_back(instantaneous_pdp(dtaps, ddelay.grid_step(),
                                              t * ddelay.snapshot_interval_s()));
        }
        const auto dyn_regions = stationarity_regions(
            dpdps, 0.8, dyn_cfg.scenario.ut_speed_mps, ddelay.snapshot_interval_s());
        std::vector<double> ws;
        for (const auto &r : dyn_regions)
            ws.push_back(r.delta_w_s);
        std::sort(ws.begin(), ws.end());
        const double median = ws[ws.size() / 2];
        c.note("default evolution: median dW = " + fmtnum(median) + " s, distance = " +
               fmtnum(median * dyn_cfg.scenario.ut_speed_mps) +
               " m (reported, not asserted)");
    }

    // 6. K-factor combination power ratio.
    void criterion_k_combination()
    {
        Criterion c("6. K-combination power ratio within 2% for K in {0, 0.66, 10} dB");
        const AntennaPattern iso = AntennaPattern::isotropic();
        ClusterGenConfig gen;
        gen.rays_per_cluster = 20;
        gen.xpr = {300.0, 0.0};
        LspSample lsps;
        lsps.ds_ns = 82.0;
        lsps.asa_deg = 16.26;
        lsps.esa_deg = 2.37;
        ScenarioConfig sc = scenario_preset(AreaTag::Rural5GRA);
        const LinkGeometry geom = LinkGeometry::make(sc, sc.ut_position);
        const LosDirections los = los_directions(sc.bs_position, sc.ut_position);

        Rng rng(20260810, "acceptance/kcomb");
        for (double k_db : {0.0, 0.66, 10.0})
        {
            const double k_lin = std::pow(10.0, k_db / 10.0);
            const KCombination kc = combine_los_scales(k_lin);
            double p_los = 0.0, p_nlos = 0.0;
            const int redraws = 10000;
            ClusterSet set = generate_cluster_set(gen, lsps, los, geom.d_3d_m / 3e8, 0.0,
                                                  rng);
            for (int rep = 0; rep < redraws; ++rep)
            {
                for (auto &cl : set.clusters)
                    for (auto &ray : cl.rays)
                    {
                        ray.phase_tt = pi - 2.0 * pi * rng.uniform();
                        ray.phase_pp = pi - 2.0 * pi * rng.uniform();
                    }
                for (const auto &cl : set.clusters)
                {
                    std::complex<double> g = 0.0;
                    for (const auto &ray : cl.rays)
                        g += nlos_ray_coefficient(ray, cl.power_lin,
                                                  static_cast<int>(cl.rays.size()), iso,
                                                  iso, Vec3{}, Vec3{}, Vec3{}, 0.1388,
                                                  0.0);
                    p_nlos += kc.nlos_scale * kc.nlos_scale * std::norm(g);
                }
                const std::complex<double> h_los =
                    los_coefficient(geom, iso, iso, Vec3{}, Vec3{}, Vec3{}, 0.0);
                p_los += kc.los_scale * kc.los_scale * std::norm(h_los);
            }
            if (k_lin == 0.0)
            {
                c.expect(p_los == 0.0, "K = 0: specular power exactly zero");
                continue;
            }
            const double ratio = p_los / p_nlos;
            const double rel = std::fabs(ratio - k_lin) / k_lin;
            c.expect(rel <= 0.02, "K " + fmtnum(k_db) + " dB: measured ratio " +
                                      fmtnum(ratio) + " vs " + fmtnum(k_lin) + " (" +
                                      fmtnum(rel * 100) + "% <= 2%)");
        }
    }

    // 7. Doppler: exact bound at alignment, never exceeded elsewhere.
    void criterion_doppler()
    {
        Criterion c("7. Doppler: aligned ray at 160.1 Hz +-0.1%, bound never exceeded");
        ScenarioConfig sc = scenario_preset(AreaTag::Rural5GRA);
        sc.tx_antenna = {PatternKind::Isotropic, 0.0};
        sc.rx_antenna = {PatternKind::Isotropic, 0.0};
        sc.apply_path_loss = false;
        sc.snapshot_rate_hz = 1000.0; // fine grid for the phase-slope estimate
        sc.duration_s = 0.002;
        const double f_d = sc.ut_speed_mps / sc.wavelength_m();

        // Single ray arriving exactly from the direction of travel.
        ClusterSet set;
        ClusterState cl;
        cl.delay_s = 0.0;
        cl.delay_abs_s = 2e-6;
        cl.power_lin = 1.0;
        Ray ray;
        ray.aoa_az = sc.ut_heading_rad;
        ray.eoa_zen = pi / 2;
        ray.aod_az = 0.1;
        ray.eod_zen = 1.3;
        ray.xpr_linear = 1e30;
        cl.rays.push_back(ray);
        set.clusters.push_back(cl);

        RenderOptions opts;
        opts.domain = TraceDomain::Delay;
        TraceRenderer renderer(sc, opts);
        CirTrace trace = renderer.make_trace(2);
        const LinkGeometry geom = LinkGeometry::make(sc, sc.ut_position);
        const double dt = 1.0 / sc.snapshot_rate_hz;
        renderer.render_snapshot(trace, 0, 0.0, set, -1.0, geom, 0.0);
        renderer.render_snapshot(trace, 1, dt, set, -1.0, geom, 0.0);
        const std::complex<double> h0{trace.at(0, 0, 0, 0)};
        const std::complex<double> h1{trace.at(1, 0, 0, 0)};
        const double f_hat = std::arg(h1 / h0) / (2.0 * pi * dt);
        c.expect(std::fabs(f_hat - 160.1) / 160.1 <= 0.001,
                 "aligned-ray Doppler " + fmtnum(f_hat) + " Hz vs 160.1 Hz (+-0.1%)");

        // Bound over every ray of a full default simulation.
        IniDoc doc;
        doc.set("scenario", "profile", "5G-R-rural-A");
        doc.set("scenario", "duration_s", "5");
        const SimConfig cfg = load_sim_config(doc);
        const SimOutputs sim = run_simulation(cfg, 11);
        const double lambda = cfg.scenario.wavelength_m();
        const Vec3 v = cfg.scenario.ut_velocity();
        double worst = 0.0;
        for (const auto &m : sim.ground_truth)
        {
            const Vec3 r = direction_unit_vector(SphericalAngles(m.aoa_rad, m.eoa_rad));
            worst = std::max(worst, std::fabs(r.dot(v)) / lambda);
        }
        c.expect(worst <= f_d * (1.0 + 1e-9),
                 "max per-ray Doppler over the trace " + fmtnum(worst) + " Hz <= " +
                     fmtnum(f_d) + " Hz");
    }

    // 8. Exact analysis identities.
    void criterion_identities()
    {
        Criterion c("8. Analysis identities: TPCC, RMS DS, MCD, KPowerMeans, triads");
        Rng rng(20260810, "acceptance/identities");
        bool tpcc_ok = true, ds_ok = true, mcd_ok = true, kpm_ok = true, triad_ok = true;

        for (int rep = 0; rep < 200; ++rep)
        {
            Pdp a, b;
            a.delay_step_s = b.delay_step_s = 1e-7;
            for (int k = 0; k < 16; ++k)
            {
                a.power.push_back(rng.uniform());
                b.power.push_back(rng.uniform());
            }
            const double cab = tpcc(a, b);
            tpcc_ok = tpcc_ok && cab >= 0.0 && cab <= 1.0 + 1e-12 && cab == tpcc(b, a);
            const double scale = 1.0 + 4.0 * rng.uniform();
            Pdp a_scaled = a;
            for (auto &p : a_scaled.power)
                p *= scale;
            tpcc_ok = tpcc_ok && std::fabs(tpcc(a, a_scaled) - 1.0 / scale) < 1e-9;

            std::vector<double> delays, powers;
            for (int k = 0; k < 6; ++k)
            {
                delays.push_back(rng.uniform() * 1e-6);
                powers.push_back(rng.uniform() + 1e-3);
            }
            const double base = rms_delay_spread(delays, powers);
            std::vector<double> shifted = delays;
            for (auto &d : shifted)
                d += 5e-7;
            std::vector<double> scaled_p = powers;
            for (auto &p : scaled_p)
                p *= 77.0;
            ds_ok = ds_ok && std::fabs(rms_delay_spread(shifted, powers) - base) < 1e-15;
            ds_ok = ds_ok && std::fabs(rms_delay_spread(delays, scaled_p) - base) < 1e-15;

            MpcEntry x, y;
            x.amplitude = y.amplitude = 1.0;
            x.delay_s = rng.uniform() * 1e-6;
            y.delay_s = rng.uniform() * 1e-6;
            x.aoa_rad = rng.uniform(0.0, 2 * pi);
            y.aoa_rad = rng.uniform(0.0, 2 * pi);
            x.eoa_rad = rng.uniform(0.1, pi - 0.1);
            y.eoa_rad = rng.uniform(0.1, pi - 0.1);
            const McdParams params{1.0, 2e-7, 1e-6};
            const double dxy = mcd(x, y, params);
            mcd_ok = mcd_ok && dxy >= 0.0 && dxy == mcd(y, x, params) &&
                     mcd(x, x, params) == 0.0;
        }

        std::vector<MpcEntry> mpcs;
        for (int i = 0; i < 80; ++i)
        {
            MpcEntry m;
            m.amplitude = 0.1 + rng.uniform();
            m.delay_s = rng.uniform() * 1e-6;
            m.aoa_rad = rng.uniform(0.0, 2 * pi);
            m.eoa_rad = rng.uniform(0.2, pi - 0.2);
            mpcs.push_back(m);
        }
        const KpmResult res = kpowermeans(mpcs, 5, rng);
        for (std::size_t i = 1; i < res.cost_per_iteration.size(); ++i)
            kpm_ok = kpm_ok &&
                     res.cost_per_iteration[i] <= res.cost_per_iteration[i - 1] + 1e-15;

        for (int rep = 0; rep < 500; ++rep)
        {
            const SphericalAngles ang(rng.uniform(0.0, 2 * pi), rng.uniform(0.0, pi));
            const auto [th, ph] = spherical_unit_vectors(ang);
            const Vec3 r = direction_unit_vector(ang);
            triad_ok = triad_ok && std::fabs(th.norm() - 1.0) < 1e-9 &&
                       std::fabs(ph.norm() - 1.0) < 1e-9 &&
                       std::fabs(r.norm() - 1.0) < 1e-9 && std::fabs(th.dot(ph)) < 1e-9 &&
                       std::fabs(r.dot(ph)) < 1e-9 && std::fabs(r.dot(th)) < 1e-9;
        }

        c.expect(tpcc_ok, "TPCC symmetry, range, and the 1/a scaling law");
        c.expect(ds_ok, "RMS DS shift and scale invariance");
        c.expect(mcd_ok, "MCD symmetry, non-negativity, zero at identity");
        c.expect(kpm_ok, "KPowerMeans objective non-increasing per iteration");
        c.expect(triad_ok, "spherical triad orthonormality");
    }

    // 9. Byte-identical outputs for identical (config, seed).
    void criterion_determinism()
    {
        Criterion c("9. Determinism: identical (config, seed) give byte-identical traces");
        IniDoc doc;
        doc.set("scenario", "profile", "5G-R-rural-A");
        doc.set("scenario", "duration_s", "5");
        const SimConfig cfg = load_sim_config(doc);
        const auto d1 = fresh_dir("det_a");
        const auto d2 = fresh_dir("det_b");
        const auto f1 = cmd_simulate(cfg, 424242, d1);
        const auto f2 = cmd_simulate(cfg, 424242, d2);
        const std::string t1 = slurp(f1.trace);
        const std::string t2 = slurp(f2.trace);
        c.expect(!t1.empty() && t1 == t2,
                 "trace files byte-identical (" + fmtnum(static_cast<double>(t1.size())) +
                     " bytes)");
        c.expect(slurp(f1.evolution) == slurp(f2.evolution) &&
                     slurp(f1.mpc) == slurp(f2.mpc),
                 "evolution and MPC CSVs identical");
    }
}

int main()
{
    std::printf("ch5gr acceptance suite\n");
    criterion_cdl_static();
    criterion_markov_fidelity();
    criterion_birth_death_mean();
    criterion_lsp_recovery();
    criterion_stationarity();
    criterion_k_combination();
    criterion_doppler();
    criterion_identities();
    criterion_determinism();
    if (g_failures > 0)
    {
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
}
