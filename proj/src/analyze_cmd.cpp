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
// The `analyze` command: metric extraction from trace files or MPC record
// files into per-metric CSV sets (samples, fits, quantile tables).

#include "ch5gr/mpc_io.hpp"
#include "ch5gr/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace ch5gr
{
    namespace
    {
        constexpr double rad2deg = 180.0 / std::numbers::pi;

        enum class InputKind
        {
            Trace,
            Mpc,
        };

        InputKind detect_input(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw std::runtime_error("cannot open input: " + path.string());
            char head[8] = {};
            in.read(head, sizeof(head));
            static const char magic[8] = {'C', 'I', 'R', '5', 'G', 'R', '1', '\0'};
            if (in.gcount() == 8 && std::equal(head, head + 8, magic))
                return InputKind::Trace;
            in.clear();
            in.seekg(0);
            std::string first;
            std::getline(in, first);
            if (first.find("snapshot") != std::string::npos &&
                first.find("delay_s") != std::string::npos)
                return InputKind::Mpc;
            throw FormatError("input is neither a trace (bad magic) nor an MPC CSV "
                              "(missing header)",
                              0);
        }

        struct TraceAnalysis
        {
            std::vector<Pdp> pdps;       // per snapshot, element pair (0, 0)
            std::vector<Pdp> apdps;      // windowed + thresholded
            double dt = 0.0;
            int window = 1;
        };

        int window_snapshots(const CirTrace &trace, const SimConfig *cfg)
        {
            if (!cfg)
                return 1;
            const double v = cfg->scenario.ut_speed_mps;
            if (v <= 0.0)
                return 1;
            const double lambda = cfg->scenario.wavelength_m();
            const double span_s = cfg->analysis.window_wavelengths * lambda / v;
            const int w = static_cast<int>(std::ceil(span_s / trace.snapshot_interval_s()));
            return std::clamp(w, 1, static_cast<int>(trace.n_snapshots()));
        }

        TraceAnalysis prepare_trace(const CirTrace &input, const SimConfig *cfg)
        {
            const CirTrace delay_trace = input.domain() == TraceDomain::Delay
                                             ? input
                                             : input.to_domain(TraceDomain::Delay);
            TraceAnalysis ta;
            ta.dt = delay_trace.snapshot_interval_s();
            ta.window = window_snapshots(delay_trace, cfg);

            const auto t_count = delay_trace.n_snapshots();
            const auto bins = delay_trace.n_grid();
            std::vector<std::complex<float>> taps(bins);
            for (std::uint32_t t = 0; t < t_count; ++t)
            {
                for (std::uint32_t k = 0; k < bins; ++k)
                    taps[k] = delay_trace.at(t, k, 0, 0);
                ta.pdps.push_back(instantaneous_pdp(taps, delay_trace.grid_step(),
                                                    t * ta.dt));
            }

            const double configured_floor =
                cfg ? cfg->analysis.noise_floor_db
                    : std::numeric_limits<double>::quiet_NaN();
            for (std::uint32_t t = 0; t < t_count; ++t)
            {
                const int lo = std::max(0, static_cast<int>(t) - ta.window / 2);
                const int hi = std::min(static_cast<int>(t_count),
                                        lo + std::max(ta.window, 1));
                std::span<const Pdp> win(ta.pdps.data() + lo,
                                         static_cast<std::size_t>(hi - lo));
                Pdp mean = apdp(win, -std::numeric_limits<double>::infinity());
                const double floor = std::isnan(configured_floor)
                                         ? estimate_noise_floor_db(mean)
                                         : configured_floor;
                std::vector<Pdp> one{std::move(mean)};
                ta.apdps.push_back(apdp(one, floor));
                ta.apdps.back().time_s = t * ta.dt;
            }
            return ta;
        }

        std::string fit_csv(const FitResult &fit, const std::string &unit_note)
        {
            std::ostringstream os;
            os.precision(12);
            os << "family,mu,sigma,ks_stat,n,units\n";
            os << (fit.family == DistFamily::LogNormal ? "lognormal" : "normal") << ','
               << fit.mu << ',' << fit.sigma << ',' << fit.ks_stat << ',' << fit.n << ','
               << unit_note << '\n';
            return os.str();
        }

        void emit_series_fit_cdf(const std::filesystem::path &out_dir,
                                 const std::string &stem,
                                 const std::string &series_csv,
                                 const std::vector<double> &samples, DistFamily family,
                                 const std::string &unit_note,
                                 std::vector<std::string> &outputs)
        {
            atomic_write_text(out_dir / (stem + ".csv"), series_csv);
            outputs.push_back((out_dir / (stem + ".csv")).string());
            if (samples.size() >= 2)
            {
                const FitResult fit = fit_distribution(samples, family);
                atomic_write_text(out_dir / (stem + "_fit.csv"), fit_csv(fit, unit_note));
                outputs.push_back((out_dir / (stem + "_fit.csv")).string());
            }
            if (!samples.empty())
            {
                atomic_write_text(out_dir / (stem + "_cdf.csv"),
                                  cdf_table_csv(samples, unit_note));
                outputs.push_back((out_dir / (stem + "_cdf.csv")).string());
            }
        }

        // ---- trace metrics -------------------------------------------------

        void metric_apdp(const TraceAnalysis &ta, const std::filesystem::path &out_dir,
                         std::vector<std::string> &outputs)
        {
            std::ostringstream os;
            os.precision(12);
            os << "snapshot,delay_s,power\n";
            for (std::size_t t = 0; t < ta.apdps.size(); ++t)
                for (std::size_t k = 0; k < ta.apdps[t].power.size(); ++k)
                    if (ta.apdps[t].power[k] > 0.0)
                        os << t << ',' << static_cast<double>(k) * ta.apdps[t].delay_step_s
                           << ',' << ta.apdps[t].power[k] << '\n';
            atomic_write_text(out_dir / "apdp.csv", os.str());
            outputs.push_back((out_dir / "apdp.csv").string());
        }

        void metric_rmsds(const TraceAnalysis &ta, const std::filesystem::path &out_dir,
                          std::vector<std::string> &outputs)
        {
            std::ostringstream os;
            os.precision(12);
            os << "snapshot,time_s,rms_ds_ns\n";
            std::vector<double> ns_values;
            for (std::size_t t = 0; t < ta.apdps.size(); ++t)
            {
                double value_ns = std::numeric_limits<double>::quiet_NaN();
                try
                {
                    value_ns = rms_delay_spread(ta.apdps[t]) * 1e9;
                    ns_values.push_back(value_ns);
                }
                catch (const std::domain_error &)
                {
                    continue; // empty profile after thresholding
                }
                os << t << ',' << ta.apdps[t].time_s << ',' << value_ns << '\n';
            }
            std::vector<double> positive;
            for (double v : ns_values)
                if (v > 0.0)
                    positive.push_back(v);
            emit_series_fit_cdf(out_dir, "rmsds", os.str(), positive, DistFamily::LogNormal,
                                "ln_ns", outputs);
        }

        void metric_kfactor(const TraceAnalysis &ta, const std::filesystem::path &out_dir,
                            std::vector<std::string> &outputs)
        {
            std::ostringstream os;
            os.precision(12);
            os << "snapshot,time_s,k_db\n";
            std::vector<double> values;
            for (std::size_t t = 0; t < ta.apdps.size(); ++t)
            {
                try
                {
                    const double k = rice_k_factor_db(ta.apdps[t]);
                    values.push_back(k);
                    os << t << ',' << ta.apdps[t].time_s << ',' << k << '\n';
                }
                catch (const SinglePathError &)
                {
                    continue;
                }
                catch (const std::domain_error &)
                {
                    continue;
                }
            }
            emit_series_fit_cdf(out_dir, "kfactor", os.str(), values, DistFamily::Normal,
                                "dB", outputs);
        }

        void metric_tpcc(const TraceAnalysis &ta, const std::filesystem::path &out_dir,
                         std::vector<std::string> &outputs)
        {
            std::ostringstream os;
            os.precision(12);
            os << "i,j,tpcc\n";
            for (std::size_t i = 0; i < ta.pdps.size(); ++i)
                for (std::size_t j = i; j < ta.pdps.size(); ++j)
                    os << i << ',' << j << ',' << tpcc(ta.pdps[i], ta.pdps[j]) << '\n';
            atomic_write_text(out_dir / "tpcc.csv", os.str());
            outputs.push_back((out_dir / "tpcc.csv").string());
        }

        void metric_stationarity(const TraceAnalysis &ta, const SimConfig *cfg,
                                 const std::filesystem::path &out_dir,
                                 std::vector<std::string> &outputs)
        {
            if (!cfg)
                throw std::invalid_argument(
                    "metric stationarity needs a --config for speed and threshold");
            const double v = cfg->scenario.ut_speed_mps;
            const auto regions = stationarity_regions(ta.pdps, cfg->analysis.tpcc_threshold,
                                                      v, ta.dt);
            std::ostringstream os;
            os.precision(12);
            os << "anchor_snapshot,delta_w_s,distance_m\n";
            std::vector<double> distances;
            double sum_w = 0.0;
            for (const auto &r : regions)
            {
                os << r.anchor_snapshot << ',' << r.delta_w_s << ',' << r.distance_m << '\n';
                if (r.distance_m > 0.0)
                    distances.push_back(r.distance_m);
                sum_w += r.delta_w_s;
            }
            emit_series_fit_cdf(out_dir, "stationarity", os.str(), distances,
                                DistFamily::LogNormal, "m", outputs);

            // Per-anchor windows are forward maxima; the mean is reported
            // alongside, labeled.
            std::ostringstream sum;
            sum.precision(12);
            sum << "statistic,delta_w_s,distance_m\n";
            if (!regions.empty())
            {
                const double mean_w = sum_w / static_cast<double>(regions.size());
                std::vector<double> ws;
                for (const auto &r : regions)
                    ws.push_back(r.delta_w_s);
                std::sort(ws.begin(), ws.end());
                const double med_w = ws[ws.size() / 2];
                sum << "mean," << mean_w << ',' << v * mean_w << '\n';
                sum << "median," << med_w << ',' << v * med_w << '\n';
                sum << "max," << ws.back() << ',' << v * ws.back() << '\n';
            }
            atomic_write_text(out_dir / "stationarity_summary.csv", sum.str());
            outputs.push_back((out_dir / "stationarity_summary.csv").string());
        }

        void metric_pl_sf(const CirTrace &trace, const TraceAnalysis &ta,
                          const SimConfig *cfg, bool want_pl, bool want_sf,
                          const std::filesystem::path &out_dir,
                          std::vector<std::string> &outputs)
        {
            if (!cfg)
                throw std::invalid_argument("metrics pl/sf need a --config for geometry");
            const auto L = extract_large_scale(trace, ta.window);
            const Vec3 v = cfg->scenario.ut_velocity();
            std::vector<double> dist, level;
            for (std::size_t t = 0; t < L.size(); ++t)
            {
                const Vec3 ut = cfg->scenario.ut_position +
                                v * (static_cast<double>(t) * ta.dt);
                const double d = (ut - cfg->scenario.bs_position).norm();
                if (d < cfg->scenario.near_field_cutoff_m)
                    continue;
                dist.push_back(d);
                level.push_back(L[t]);
            }
            if (dist.size() < 2)
                throw std::invalid_argument(
                    "pl/sf: fewer than two samples beyond the near-field cutoff");
            const PathLossFit fit =
                fit_path_loss(dist, level, cfg->scenario.path_loss.ref_distance_m);

            if (want_pl)
            {
                std::ostringstream os;
                os.precision(12);
                os << "distance_m,large_scale_db\n";
                for (std::size_t i = 0; i < dist.size(); ++i)
                    os << dist[i] << ',' << level[i] << '\n';
                atomic_write_text(out_dir / "pl.csv", os.str());
                outputs.push_back((out_dir / "pl.csv").string());

                std::ostringstream fs;
                fs.precision(12);
                fs << "intercept_db,exponent,sf_sigma_db,n\n";
                fs << fit.intercept_db << ',' << fit.exponent << ',' << fit.sf_sigma_db
                   << ',' << dist.size() << '\n';
                atomic_write_text(out_dir / "pl_fit.csv", fs.str());
                outputs.push_back((out_dir / "pl_fit.csv").string());
            }
            if (want_sf)
            {
                std::ostringstream os;
                os.precision(12);
                os << "distance_m,sf_db\n";
                for (std::size_t i = 0; i < dist.size(); ++i)
                    os << dist[i] << ',' << fit.residuals_db[i] << '\n';
                emit_series_fit_cdf(out_dir, "sf", os.str(), fit.residuals_db,
                                    DistFamily::Normal, "dB", outputs);
            }
        }

        // ---- MPC metrics ---------------------------------------------------

        void metric_as(const std::vector<std::vector<MpcEntry>> &snaps,
                       const std::filesystem::path &out_dir,
                       std::vector<std::string> &outputs)
        {
            std::ostringstream os;
            os.precision(12);
            os << "snapshot,asa_deg,esa_deg\n";
            std::vector<double> asa, esa;
            for (std::size_t t = 0; t < snaps.size(); ++t)
            {
                if (snaps[t].empty())
                    continue;
                const double a = angular_spread_rad(snaps[t], AngleDim::Azimuth) * rad2deg;
                const double e = angular_spread_rad(snaps[t], AngleDim::Elevation) * rad2deg;
                os << t << ',' << a << ',' << e << '\n';
                if (a > 0.0)
                    asa.push_back(a);
                if (e > 0.0)
                    esa.push_back(e);
            }
            atomic_write_text(out_dir / "as.csv", os.str());
            outputs.push_back((out_dir / "as.csv").string());
            if (asa.size() >= 2)
            {
                atomic_write_text(out_dir / "asa_fit.csv",
                                  fit_csv(fit_distribution(asa, DistFamily::LogNormal),
                                          "ln_deg"));
                outputs.push_back((out_dir / "asa_fit.csv").string());
                atomic_write_text(out_dir / "asa_cdf.csv", cdf_table_csv(asa, "deg"));
                outputs.push_back((out_dir / "asa_cdf.csv").string());
            }
            if (esa.size() >= 2)
            {
                atomic_write_text(out_dir / "esa_fit.csv",
                                  fit_csv(fit_distribution(esa, DistFamily::LogNormal),
                                          "ln_deg"));
                outputs.push_back((out_dir / "esa_fit.csv").string());
                atomic_write_text(out_dir / "esa_cdf.csv", cdf_table_csv(esa, "deg"));
                outputs.push_back((out_dir / "esa_cdf.csv").string());
            }
        }

        std::vector<McdCentroid> centroids_from_labels(const std::vector<MpcEntry> &snap)
        {
            std::map<int, std::vector<const MpcEntry *>> groups;
            for (const auto &m : snap)
                groups[m.cluster_label].push_back(&m);
            std::vector<McdCentroid> out;
            for (const auto &[label, members] : groups)
            {
                McdCentroid c;
                Vec3 dir{};
                double tau = 0.0, w = 0.0, cs = 0.0, sn = 0.0;
                for (const auto *m : members)
                {
                    const double p = std::norm(m->amplitude);
                    w += p;
                    tau += p * m->delay_s;
                    cs += p * std::cos(m->aoa_rad);
                    sn += p * std::sin(m->aoa_rad);
                    const double st = std::sin(m->eoa_rad);
                    dir = dir + p * Vec3{std::cos(m->aoa_rad) * st,
                                         std::sin(m->aoa_rad) * st, std::cos(m->eoa_rad)};
                }
                if (w <= 0.0)
                    continue;
                c.power = w;
                c.delay_s = tau / w;
                c.dir = dir * (1.0 / w);
                c.aoa_rad = SphericalAngles::wrap_azimuth(std::atan2(sn, cs));
                const double n = c.dir.norm();
                c.eoa_rad = n > 1e-12 ? std::acos(std::clamp(c.dir.z / n, -1.0, 1.0)) : 0.0;
                out.push_back(c);
            }
            return out;
        }

        int pick_k_elbow(const std::vector<MpcEntry> &snap, int k_max, Rng &rng, double xi)
        {
            const int n = static_cast<int>(snap.size());
            const int cap = std::min(k_max, n);
            if (cap <= 1)
                return std::max(cap, 1);
            double prev_cost = -1.0;
            for (int k = 1; k <= cap; ++k)
            {
                const auto res = kpowermeans(snap, k, rng, xi);
                const double cost = res.cost_per_iteration.back();
                if (prev_cost > 0.0 && cost > 0.7 * prev_cost)
                    return k - 1; // diminishing return: previous k was the elbow
                if (cost <= 1e-15)
                    return k;
                prev_cost = cost;
            }
            return cap;
        }

        void metric_cluster(const std::vector<std::vector<MpcEntry>> &snaps,
                            const SimConfig *cfg, const std::filesystem::path &out_dir,
                            std::vector<std::string> &outputs)
        {
            const double xi = cfg ? cfg->analysis.mcd_xi : 1.0;
            const double threshold = cfg ? cfg->analysis.track_threshold : 0.06;
            const int k_max = cfg ? cfg->analysis.kpm_k_max : 10;
            Rng rng(fnv1a64("analyze/cluster"));

            std::vector<std::vector<McdCentroid>> per_snapshot;
            per_snapshot.reserve(snaps.size());
            for (const auto &snap : snaps)
            {
                if (snap.empty())
                {
                    per_snapshot.emplace_back();
                    continue;
                }
                const bool labeled =
                    std::all_of(snap.begin(), snap.end(),
                                [](const MpcEntry &m) { return m.cluster_label >= 0; });
                if (labeled)
                {
                    per_snapshot.push_back(centroids_from_labels(snap));
                }
                else
                {
                    const int k = pick_k_elbow(snap, k_max, rng, xi);
                    const auto res = kpowermeans(snap, k, rng, xi);
                    per_snapshot.push_back(res.centroids);
                }
            }

            const auto tracks = track_clusters(per_snapshot, threshold, xi);
            std::ostringstream ts;
            ts.precision(12);
            ts << "track_id,birth_snapshot,death_snapshot,lifetime_snapshots\n";
            for (const auto &t : tracks)
                ts << t.id << ',' << t.birth_snapshot << ',' << t.death_snapshot << ','
                   << t.lifetime_snapshots() << '\n';
            atomic_write_text(out_dir / "tracks.csv", ts.str());
            outputs.push_back((out_dir / "tracks.csv").string());

            const double dt =
                cfg ? 1.0 / cfg->scenario.snapshot_rate_hz : 1.0;
            if (tracks.size() >= 2)
            {
                const auto stats =
                    lifetime_stats(tracks, dt, static_cast<int>(snaps.size()));
                atomic_write_text(out_dir / "lifetime_fit.csv",
                                  fit_csv(stats.lifetime_fit, "ln_s"));
                outputs.push_back((out_dir / "lifetime_fit.csv").string());
                atomic_write_text(out_dir / "lifetime_cdf.csv",
                                  cdf_table_csv(stats.lifetimes_s, "s"));
                outputs.push_back((out_dir / "lifetime_cdf.csv").string());

                std::ostringstream hs;
                hs << "alive_clusters,snapshots\n";
                for (const auto &[count, snapsn] : stats.count_histogram)
                    hs << count << ',' << snapsn << '\n';
                atomic_write_text(out_dir / "cluster_count_hist.csv", hs.str());
                outputs.push_back((out_dir / "cluster_count_hist.csv").string());
            }
        }

        void metric_markov(const std::vector<std::vector<MpcEntry>> &snaps,
                           const SimConfig *cfg, const std::filesystem::path &out_dir,
                           std::vector<std::string> &outputs)
        {
            const double xi = cfg ? cfg->analysis.mcd_xi : 1.0;
            const double threshold = cfg ? cfg->analysis.track_threshold : 0.06;
            // Birth/death events are classified per birth-death interval.
            int stride = 1;
            if (cfg)
            {
                const double dt = 1.0 / cfg->scenario.snapshot_rate_hz;
                stride = std::max(1, static_cast<int>(std::lround(cfg->evolution.dt_bd_s / dt)));
            }

            std::vector<std::vector<McdCentroid>> per_snapshot;
            for (const auto &snap : snaps)
                per_snapshot.push_back(snap.empty() ? std::vector<McdCentroid>{}
                                                    : centroids_from_labels(snap));
            const auto tracks = track_clusters(per_snapshot, threshold, xi);

            // Birth events at the track's first snapshot (initial appearances
            // at 0 excluded); death events the snapshot after the last one.
            const int n_snaps = static_cast<int>(snaps.size());
            std::vector<std::size_t> births_at(static_cast<std::size_t>(n_snaps), 0);
            std::vector<std::size_t> deaths_at(static_cast<std::size_t>(n_snaps), 0);
            for (const auto &t : tracks)
            {
                if (t.birth_snapshot >= 1)
                    ++births_at[static_cast<std::size_t>(t.birth_snapshot)];
                if (t.death_snapshot + 1 <= n_snaps - 1)
                    ++deaths_at[static_cast<std::size_t>(t.death_snapshot + 1)];
            }
            std::vector<BdState> states;
            for (int w = 0; w + stride < n_snaps; w += stride)
            {
                std::size_t births = 0, deaths = 0;
                for (int s = w + 1; s <= w + stride && s < n_snaps; ++s)
                {
                    births += births_at[static_cast<std::size_t>(s)];
                    deaths += deaths_at[static_cast<std::size_t>(s)];
                }
                states.push_back(classify_bd_state(births, deaths));
            }
            if (states.size() < 2)
                throw std::invalid_argument("markov: needs at least two birth-death steps");
            const MarkovFit fit = fit_markov(states);

            std::ostringstream os;
            os.precision(12);
            os << "row,p0,p1,p2,p3,has_data\n";
            for (int r = 0; r < 4; ++r)
                os << 'S' << r << ',' << fit.matrix.at(r, 0) << ',' << fit.matrix.at(r, 1)
                   << ',' << fit.matrix.at(r, 2) << ',' << fit.matrix.at(r, 3) << ','
                   << (fit.row_has_data[static_cast<std::size_t>(r)] ? 1 : 0) << '\n';
            atomic_write_text(out_dir / "markov_fit.csv", os.str());
            outputs.push_back((out_dir / "markov_fit.csv").string());

            std::ostringstream ss;
            ss << "step,state\n";
            for (std::size_t i = 0; i < states.size(); ++i)
                ss << i << ",S" << static_cast<int>(states[i]) << '\n';
            atomic_write_text(out_dir / "markov_states.csv", ss.str());
            outputs.push_back((out_dir / "markov_states.csv").string());
        }
    }

    void cmd_analyze(const std::filesystem::path &input, const std::string &metric,
                     const SimConfig *cfg, const std::filesystem::path &out_dir)
    {
        const auto t0 = std::chrono::steady_clock::now();
        static const std::set<std::string> trace_metrics{
            "pl", "sf", "apdp", "rmsds", "kfactor", "tpcc", "stationarity"};
        static const std::set<std::string> mpc_metrics{"as", "cluster", "markov"};
        if (metric != "all" && !trace_metrics.count(metric) && !mpc_metrics.count(metric))
            throw std::invalid_argument("unknown metric: " + metric);

        const InputKind kind = detect_input(input);
        std::filesystem::create_directories(out_dir);
        // Metrics write into a staging directory that is promoted only after
        // every requested metric succeeded; failures leave no partial set.
        const std::filesystem::path staging = out_dir / ".staging";
        std::filesystem::remove_all(staging);
        std::filesystem::create_directories(staging);
        std::vector<std::string> outputs;

        try
        {
            if (kind == InputKind::Trace)
            {
                if (metric != "all" && !trace_metrics.count(metric))
                    throw std::invalid_argument("metric " + metric +
                                                " needs an MPC record input");
                const CirTrace trace = CirTrace::load(input);
                const TraceAnalysis ta = prepare_trace(trace, cfg);
                const bool all = metric == "all";
                if (all || metric == "apdp")
                    metric_apdp(ta, staging, outputs);
                if (all || metric == "rmsds")
                    metric_rmsds(ta, staging, outputs);
                if (all || metric == "kfactor")
                    metric_kfactor(ta, staging, outputs);
                if (all || metric == "tpcc")
                    metric_tpcc(ta, staging, outputs);
                if ((all && cfg) || metric == "stationarity")
                    metric_stationarity(ta, cfg, staging, outputs);
                if ((all && cfg) || metric == "pl" || metric == "sf")
                    metric_pl_sf(trace, ta, cfg, all || metric == "pl",
                                 all || metric == "sf", staging, outputs);
            }
            else
            {
                if (metric != "all" && !mpc_metrics.count(metric))
                    throw std::invalid_argument("metric " + metric +
                                                " needs a trace input");
                const auto mpcs = load_mpc_csv(input);
                if (mpcs.empty())
                    throw std::invalid_argument("MPC input has no records: " +
                                                input.string());
                const auto snaps = group_by_snapshot(mpcs);
                const bool all = metric == "all";
                if (all || metric == "as")
                    metric_as(snaps, staging, outputs);
                if (all || metric == "cluster")
                    metric_cluster(snaps, cfg, staging, outputs);
                if (all || metric == "markov")
                    metric_markov(snaps, cfg, staging, outputs);
            }
        }
        catch (...)
        {
            std::filesystem::remove_all(staging);
            throw;
        }

        // Promote the staged files.
        std::vector<std::string> final_outputs;
        for (const auto &path : outputs)
        {
            const std::filesystem::path src(path);
            const std::filesystem::path dst = out_dir / src.filename();
            std::filesystem::rename(src, dst);
            final_outputs.push_back(dst.string());
        }
        std::filesystem::remove_all(staging);
        outputs = std::move(final_outputs);

        const double duration =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        nlohmann::json j;
        j["tool"] = "ch5gr";
        j["version"] = tool_version();
        j["command"] = "analyze --metric " + metric;
        j["inputs"] = std::vector<std::string>{input.string()};
        j["outputs"] = outputs;
        j["duration_s"] = duration;
        atomic_write_text(out_dir / "manifest.json", j.dump(2) + "\n");
    }

} // namespace ch5gr
