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

#ifndef ch5gr_evolution_H
#define ch5gr_evolution_H

#include "ch5gr/cluster_gen.hpp"
#include "ch5gr/geometry.hpp"
#include "ch5gr/rng.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ch5gr
{
    enum class BdDriver
    {
        Poisson, // rate-based survival + Poisson births
        Markov,  // four-state chain, one event per fired state
    };

    // S0: quiet, S1: birth only, S2: death only, S3: both.
    enum class BdState : int
    {
        S0 = 0,
        S1 = 1,
        S2 = 2,
        S3 = 3,
    };

    BdState classify_bd_state(std::size_t births, std::size_t deaths);

    // Row-stochastic 4x4 transition matrix.
    class MarkovMatrix
    {
    public:
        MarkovMatrix(); // identity
        explicit MarkovMatrix(const std::array<std::array<double, 4>, 4> &p);

        // Matrix fitted on the rural 5G-R measurements.
        static MarkovMatrix rural5gr();

        double at(int row, int col) const { return p_[row][col]; }
        const std::array<double, 4> &row(int r) const { return p_[r]; }

        // Stationary distribution by power iteration.
        std::array<double, 4> stationary(int iterations = 1000) const;

    private:
        std::array<std::array<double, 4>, 4> p_;
        void validate() const;
    };

    struct EvolutionParams
    {
        BdDriver driver = BdDriver::Markov;
        double dt_bd_s = 0.1;   // birth-death sampling interval
        double lambda_g = 1.8;  // generation rate (per normalized distance)
        double lambda_r = 0.36; // recombination rate
        double d_c_m = 30.0;    // scenario-dependent correlation factor
        MarkovMatrix transition = MarkovMatrix::rural5gr();
        LogNormalSpec lifetime_s{0.88, 0.92};
        bool lifetime_deaths = true; // Markov driver only
        bool los_persistent = true;
        double tau_min_guard_s = 1e-9;
        double sin_eps = 1e-6;
        // Velocity rotation for the angle updates, identity by default.
        RotationMatrix rotation;

        void validate() const;
    };

    struct StepRecord
    {
        double time_s = 0.0;
        BdState state = BdState::S0;
        std::vector<std::uint64_t> births;
        std::vector<std::uint64_t> deaths;
        std::size_t n_clusters = 0;
        bool death_noop = false;        // death requested with nothing to kill
        int skipped_angle_updates = 0;  // singularity guard hits
    };

    struct EvolutionLog
    {
        std::vector<StepRecord> steps;
        void write_csv(std::ostream &os) const; // time,state,n_clusters,births,deaths
    };

    // delta_P: distance the terminal covers in one birth-death interval.
    double displacement_m(double speed_mps, double dt_bd_s);

    // exp(-lambda_R * delta_P / D_c), in (0, 1].
    double survival_probability(double delta_p_m, double lambda_r, double d_c_m);

    // (lambda_G/lambda_R) (1 - exp(-lambda_R delta_P / D_c)); lambda_R > 0.
    double expected_new_clusters(double lambda_g, double lambda_r, double delta_p_m,
                                 double d_c_m);

    // tau(t_k) = tau(t_{k-1}) - (r_hat . v / c) dt, on the absolute delay.
    double update_delay(double delay_abs_s, const Vec3 &arrival_dir, const Vec3 &velocity,
                        double dt_s);

    // Subtracts the minimum alive delay; the minimum becomes exactly zero.
    void normalize_delays(ClusterSet &set);

    // Recomputes the exponential power profile from the normalized delays and
    // renormalizes to unit sum. Clusters missing a shadowing draw get one.
    void update_powers(ClusterSet &set, double ds_s, double r_tau, double zeta_db,
                       Rng &rng);

    // The four angle increments for one cluster; returns the number of angle
    // updates skipped by the singularity guards.
    int update_angles(ClusterState &cluster, const Vec3 &rotated_velocity, double dt_s,
                      double tau_min_guard_s, double sin_eps);

    // Sequential cluster-set evolution for one link.
    class Evolver
    {
    public:
        // profile_powers = false keeps the set's own power shares (CDL tables)
        // and only renormalizes over the alive clusters.
        Evolver(ClusterSet initial, EvolutionParams params, ClusterGenConfig gen_cfg,
                LosDirections los, double ds_s, std::uint64_t master_seed,
                std::string stream_label, bool profile_powers = true);

        // Advances one snapshot interval dt; runs a birth-death step whenever
        // accumulated time crosses dt_bd. The two-argument form applies the
        // configured rotation matrix.
        const StepRecord &step(double dt_s, const Vec3 &velocity);
        const StepRecord &step(double dt_s, const Vec3 &velocity,
                               const RotationMatrix &rotation);

        const ClusterSet &set() const { return set_; }
        ClusterSet &set() { return set_; }
        const EvolutionLog &log() const { return log_; }
        BdState bd_state() const { return bd_state_; }

    private:
        ClusterSet set_;
        EvolutionParams params_;
        ClusterGenConfig gen_cfg_;
        LosDirections los_;
        double ds_s_;
        Rng rng_;
        EvolutionLog log_;
        BdState bd_state_ = BdState::S0;
        double time_s_ = 0.0;
        double since_bd_s_ = 0.0;
        double last_anchor_s_ = 0.0;
        bool profile_powers_ = true;

        void birth_death(StepRecord &rec, const Vec3 &velocity);
        void lifetime_reaper(StepRecord &rec);
        ClusterState spawn_cluster(StepRecord &rec);
        void kill_random_nlos(StepRecord &rec);
    };

} // namespace ch5gr

#endif
