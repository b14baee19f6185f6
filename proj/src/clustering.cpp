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
// MPC clustering (KPowerMeans on the MCD metric), MCD-threshold tracking
// across snapshots, lifetime statistics, and Markov-chain fitting.

#include "ch5gr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        Vec3 mpc_direction(double aoa_rad, double eoa_rad)
        {
            const double st = std::sin(eoa_rad);
            return {std::cos(aoa_rad) * st, std::sin(aoa_rad) * st, std::cos(eoa_rad)};
        }

        // Linear delay weight: MCD_delay = s * |tau_x - tau_y|.
        double delay_weight(const McdParams &p)
        {
            if (p.delta_tau_max_s <= 0.0)
                return 0.0;
            return p.xi * p.tau_std_s / (p.delta_tau_max_s * p.delta_tau_max_s);
        }

        struct DelayStats
        {
            double std_s = 0.0;
            double span_s = 0.0;
        };

        DelayStats delay_stats(std::span<const MpcEntry> a, std::span<const MpcEntry> b)
        {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            double sum = 0.0, sum2 = 0.0;
            std::size_t n = 0;
            auto feed = [&](std::span<const MpcEntry> v)
            {
                for (const auto &m : v)
                {
                    lo = std::min(lo, m.delay_s);
                    hi = std::max(hi, m.delay_s);
                    sum += m.delay_s;
                    sum2 += m.delay_s * m.delay_s;
                    ++n;
                }
            };
            feed(a);
            feed(b);
            DelayStats out;
            if (n == 0)
                return out;
            const double mean = sum / static_cast<double>(n);
            out.std_s = std::sqrt(std::max(sum2 / static_cast<double>(n) - mean * mean, 0.0));
            out.span_s = hi - lo;
            return out;
        }
    }

    McdParams mcd_params_for(std::span<const MpcEntry> a, std::span<const MpcEntry> b,
                             double xi)
    {
        const DelayStats st = delay_stats(a, b);
        return McdParams{xi, st.std_s, st.span_s};
    }

    double mcd(const MpcEntry &x, const MpcEntry &y, const McdParams &params)
    {
        if (params.delta_tau_max_s <= 0.0 && x.delay_s != y.delay_s)
            throw std::invalid_argument("mcd: zero delay span with differing delays");
        const Vec3 du = mpc_direction(x.aoa_rad, x.eoa_rad) -
                        mpc_direction(y.aoa_rad, y.eoa_rad);
        const double angle_term = 0.5 * du.norm();
        const double delay_term = delay_weight(params) * std::fabs(x.delay_s - y.delay_s);
        return std::sqrt(angle_term * angle_term + delay_term * delay_term);
    }

    namespace
    {
        // Embedded coordinates: direction in R^3 plus weighted delay. Squared
        // MCD to a centroid is quadratic here, so weighted-mean updates keep
        // the objective non-increasing.
        struct EmbeddedPoint
        {
            Vec3 dir;
            double tau = 0.0;
            double weight = 0.0;
        };

        double embedded_dist2(const EmbeddedPoint &p, const Vec3 &c_dir, double c_tau,
                              double s)
        {
            const Vec3 du = p.dir - c_dir;
            const double dtau = s * (p.tau - c_tau);
            return 0.25 * du.dot(du) + dtau * dtau;
        }

        McdCentroid centroid_from(const Vec3 &dir, double tau, double power)
        {
            McdCentroid c;
            c.dir = dir;
            c.delay_s = tau;
            c.power = power;
            const double n = dir.norm();
            if (n > 1e-12)
            {
                c.aoa_rad = SphericalAngles::wrap_azimuth(std::atan2(dir.y, dir.x));
                c.eoa_rad = std::acos(std::clamp(dir.z / n, -1.0, 1.0));
            }
            return c;
        }
    }

    KpmResult kpowermeans(std::span<const MpcEntry> mpcs, int k, Rng &rng, double xi)
    {
        const auto n = mpcs.size();
        if (k < 1)
            throw std::invalid_argument("kpowermeans: k must be >= 1");
        if (static_cast<std::size_t>(k) > n)
            throw std::invalid_argument("kpowermeans: k exceeds the number of MPCs");

        const McdParams params = mcd_params_for(mpcs, {}, xi);
        const double s = delay_weight(params);

        std::vector<EmbeddedPoint> pts(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            pts[i].dir = mpc_direction(mpcs[i].aoa_rad, mpcs[i].eoa_rad);
            pts[i].tau = mpcs[i].delay_s;
            pts[i].weight = std::norm(mpcs[i].amplitude);
        }

        // Power-weighted k-means++ style seeding.
        std::vector<Vec3> c_dir(static_cast<std::size_t>(k));
        std::vector<double> c_tau(static_cast<std::size_t>(k));
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i)
            weights[i] = pts[i].weight;
        std::size_t first = rng.categorical(weights);
        c_dir[0] = pts[first].dir;
        c_tau[0] = pts[first].tau;
        std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
        for (int j = 1; j < k; ++j)
        {
            std::vector<double> score(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                best_d2[i] = std::min(best_d2[i], embedded_dist2(pts[i], c_dir[j - 1],
                                                                 c_tau[j - 1], s));
                score[i] = pts[i].weight * best_d2[i];
            }
            double total = 0.0;
            for (double v : score)
                total += v;
            const std::size_t pick = total > 0.0 ? rng.categorical(score)
                                                 : rng.categorical(weights);
            c_dir[static_cast<std::size_t>(j)] = pts[pick].dir;
            c_tau[static_cast<std::size_t>(j)] = pts[pick].tau;
        }

        KpmResult result;
        result.labels.assign(n, -1);
        constexpr int max_iterations = 100;
        for (int it = 0; it < max_iterations; ++it)
        {
            bool changed = false;
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                int best = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (int j = 0; j < k; ++j)
                {
                    const double d2 = embedded_dist2(pts[i], c_dir[static_cast<std::size_t>(j)],
                                                     c_tau[static_cast<std::size_t>(j)], s);
                    if (d2 < bd)
                    {
                        bd = d2;
                        best = j;
                    }
                }
                if (result.labels[i] != best)
                {
                    result.labels[i] = best;
                    changed = true;
                }
                cost += pts[i].weight * bd;
            }
            result.cost_per_iteration.push_back(cost);
            result.iterations = it + 1;
            if (!changed && it > 0)
                break;

            for (int j = 0; j < k; ++j)
            {
                Vec3 acc{};
                double tau_acc = 0.0, w_acc = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                {
                    if (result.labels[i] != j)
                        continue;
                    acc = acc + pts[i].weight * pts[i].dir;
                    tau_acc += pts[i].weight * pts[i].tau;
                    w_acc += pts[i].weight;
                }
                if (w_acc > 0.0)
                {
                    c_dir[static_cast<std::size_t>(j)] = acc * (1.0 / w_acc);
                    c_tau[static_cast<std::size_t>(j)] = tau_acc / w_acc;
                }
                // Empty clusters keep their previous centroid.
            }
        }

        result.centroids.reserve(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j)
        {
            double power = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (result.labels[i] == j)
                    power += pts[i].weight;
            result.centroids.push_back(centroid_from(c_dir[static_cast<std::size_t>(j)],
                                                     c_tau[static_cast<std::size_t>(j)],
                                                     power));
        }
        return result;
    }

    namespace
    {
        MpcEntry centroid_as_mpc(const McdCentroid &c)
        {
            MpcEntry m;
            m.delay_s = c.delay_s;
            m.aoa_rad = c.aoa_rad;
            m.eoa_rad = c.eoa_rad;
            m.amplitude = std::sqrt(std::max(c.power, 0.0));
            return m;
        }
    }

    std::vector<ClusterTrack> track_clusters(
        const std::vector<std::vector<McdCentroid>> &per_snapshot, double threshold,
        double xi)
    {
        if (threshold < 0.0)
            throw std::invalid_argument("track_clusters: negative threshold");

        std::vector<ClusterTrack> done;
        struct Active
        {
            ClusterTrack track;
            McdCentroid last;
        };
        std::vector<Active> active;
        int next_id = 0;

        for (std::size_t snap = 0; snap < per_snapshot.size(); ++snap)
        {
            const auto &now = per_snapshot[snap];

            std::vector<MpcEntry> old_mpcs, new_mpcs;
            old_mpcs.reserve(active.size());
            for (const auto &a : active)
                old_mpcs.push_back(centroid_as_mpc(a.last));
            new_mpcs.reserve(now.size());
            for (const auto &c : now)
                new_mpcs.push_back(centroid_as_mpc(c));
            const McdParams params = mcd_params_for(old_mpcs, new_mpcs, xi);

            std::vector<bool> old_used(active.size(), false);
            std::vector<bool> new_used(now.size(), false);

            // Greedy global-minimum matching under the threshold.
            while (true)
            {
                double best = std::numeric_limits<double>::infinity();
                std::size_t bi = 0, bj = 0;
                bool found = false;
                for (std::size_t i = 0; i < active.size(); ++i)
                {
                    if (old_used[i])
                        continue;
                    for (std::size_t j = 0; j < now.size(); ++j)
                    {
                        if (new_used[j])
                            continue;
                        const double d = mcd(old_mpcs[i], new_mpcs[j], params);
                        if (d < best)
                        {
                            best = d;
                            bi = i;
                            bj = j;
                            found = true;
                        }
                    }
                }
                if (!found || best > threshold)
                    break;
                old_used[bi] = true;
                new_used[bj] = true;
                active[bi].track.death_snapshot = static_cast<int>(snap);
                active[bi].track.centroids.push_back(now[bj]);
                active[bi].last = now[bj];
            }

            // Unmatched old tracks die at the previous snapshot.
            std::vector<Active> survivors;
            for (std::size_t i = 0; i < active.size(); ++i)
            {
                if (old_used[i])
                    survivors.push_back(std::move(active[i]));
                else
                    done.push_back(std::move(active[i].track));
            }
            active = std::move(survivors);

            // Unmatched new centroids open tracks.
            for (std::size_t j = 0; j < now.size(); ++j)
            {
                if (new_used[j])
                    continue;
                Active a;
                a.track.id = next_id++;
                a.track.birth_snapshot = static_cast<int>(snap);
                a.track.death_snapshot = static_cast<int>(snap);
                a.track.centroids.push_back(now[j]);
                a.last = now[j];
                active.push_back(std::move(a));
            }
        }

        for (auto &a : active)
            done.push_back(std::move(a.track));
        std::sort(done.begin(), done.end(),
                  [](const ClusterTrack &a, const ClusterTrack &b) { return a.id < b.id; });
        return done;
    }

    LifetimeStats lifetime_stats(std::span<const ClusterTrack> tracks, double snapshot_dt_s,
                                 int n_snapshots)
    {
        if (tracks.size() < 2)
            throw std::invalid_argument("lifetime_stats: need >= 2 tracks");
        if (snapshot_dt_s <= 0.0)
            throw std::invalid_argument("lifetime_stats: invalid snapshot interval");

        LifetimeStats out;
        out.lifetimes_s.reserve(tracks.size());
        for (const auto &t : tracks)
            out.lifetimes_s.push_back(t.lifetime_snapshots() * snapshot_dt_s);
        out.lifetime_fit = fit_distribution(out.lifetimes_s, DistFamily::LogNormal);

        for (int snap = 0; snap < n_snapshots; ++snap)
        {
            int alive = 0;
            for (const auto &t : tracks)
                if (t.birth_snapshot <= snap && snap <= t.death_snapshot)
                    ++alive;
            out.count_histogram[alive]++;
        }
        return out;
    }

    MarkovFit fit_markov(std::span<const BdState> states)
    {
        if (states.size() < 2)
            throw std::invalid_argument("fit_markov: need >= 2 steps");
        std::array<std::array<double, 4>, 4> counts{};
        for (std::size_t i = 0; i + 1 < states.size(); ++i)
            counts[static_cast<std::size_t>(states[i])]
                  [static_cast<std::size_t>(states[i + 1])] += 1.0;

        MarkovFit fit;
        std::array<std::array<double, 4>, 4> p{};
        for (int r = 0; r < 4; ++r)
        {
            double total = 0.0;
            for (int c = 0; c < 4; ++c)
                total += counts[r][c];
            fit.row_has_data[static_cast<std::size_t>(r)] = total > 0.0;
            for (int c = 0; c < 4; ++c)
                p[r][c] = total > 0.0 ? counts[r][c] / total : 0.25;
        }
        fit.matrix = MarkovMatrix(p);
        return fit;
    }

} // namespace ch5gr
