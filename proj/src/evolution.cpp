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

#include "ch5gr/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ch5gr
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double zenith_eps = 1e-6;

        double clamp_zenith(double z)
        {
            return std::clamp(z, zenith_eps, pi - zenith_eps);
        }
    }

    BdState classify_bd_state(std::size_t births, std::size_t deaths)
    {
        if (births == 0 && deaths == 0)
            return BdState::S0;
        if (births > 0 && deaths == 0)
            return BdState::S1;
        if (births == 0)
            return BdState::S2;
        return BdState::S3;
    }

    MarkovMatrix::MarkovMatrix()
        : p_{{{1.0, 0.0, 0.0, 0.0},
              {0.0, 1.0, 0.0, 0.0},
              {0.0, 0.0, 1.0, 0.0},
              {0.0, 0.0, 0.0, 1.0}}}
    {
    }

    MarkovMatrix::MarkovMatrix(const std::array<std::array<double, 4>, 4> &p) : p_(p)
    {
        validate();
    }

    void MarkovMatrix::validate() const
    {
        for (const auto &row : p_)
        {
            double sum = 0.0;
            for (double v : row)
            {
                if (v < 0.0 || v > 1.0 || !std::isfinite(v))
                    throw std::invalid_argument("MarkovMatrix: entry outside [0, 1]");
                sum += v;
            }
            if (std::fabs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("MarkovMatrix: row does not sum to 1");
        }
    }

    MarkovMatrix MarkovMatrix::rural5gr()
    {
        return MarkovMatrix({{{0.66, 0.16, 0.12, 0.06},
                              {0.28, 0.02, 0.53, 0.17},
                              {0.36, 0.47, 0.05, 0.12},
                              {0.16, 0.13, 0.19, 0.52}}});
    }

    std::array<double, 4> MarkovMatrix::stationary(int iterations) const
    {
        std::array<double, 4> v{0.25, 0.25, 0.25, 0.25};
        for (int it = 0; it < iterations; ++it)
        {
            std::array<double, 4> next{};
            for (int j = 0; j < 4; ++j)
                for (int i = 0; i < 4; ++i)
                    next[j] += v[i] * p_[i][j];
            double sum = next[0] + next[1] + next[2] + next[3];
            for (auto &x : next)
                x /= sum;
            v = next;
        }
        return v;
    }

    void EvolutionParams::validate() const
    {
        if (dt_bd_s <= 0.0)
            throw std::invalid_argument("evolution: dt_bd must be > 0");
        if (lambda_g < 0.0 || lambda_r < 0.0)
            throw std::invalid_argument("evolution: rates must be >= 0");
        if (d_c_m <= 0.0)
            throw std::invalid_argument("evolution: D_c must be > 0");
        if (lifetime_s.log_sigma < 0.0)
            throw std::invalid_argument("evolution: lifetime sigma must be >= 0");
        if (tau_min_guard_s < 0.0 || sin_eps < 0.0)
            throw std::invalid_argument("evolution: guards must be >= 0");
    }

    double displacement_m(double speed_mps, double dt_bd_s)
    {
        if (dt_bd_s <= 0.0)
            throw std::invalid_argument("displacement_m: dt_bd must be > 0");
        return speed_mps * dt_bd_s;
    }

    double survival_probability(double delta_p_m, double lambda_r, double d_c_m)
    {
        if (delta_p_m < 0.0 || lambda_r < 0.0 || d_c_m <= 0.0)
            throw std::invalid_argument("survival_probability: invalid arguments");
        return std::exp(-lambda_r * delta_p_m / d_c_m);
    }

    double expected_new_clusters(double lambda_g, double lambda_r, double delta_p_m,
                                 double d_c_m)
    {
        if (lambda_r <= 0.0)
            throw std::invalid_argument("expected_new_clusters: lambda_R must be > 0");
        if (lambda_g < 0.0 || delta_p_m < 0.0 || d_c_m <= 0.0)
            throw std::invalid_argument("expected_new_clusters: invalid arguments");
        return lambda_g / lambda_r * (1.0 - std::exp(-lambda_r * delta_p_m / d_c_m));
    }

    double update_delay(double delay_abs_s, const Vec3 &arrival_dir, const Vec3 &velocity,
                        double dt_s)
    {
        if (dt_s <= 0.0)
            throw std::invalid_argument("update_delay: dt must be > 0");
        return delay_abs_s - arrival_dir.dot(velocity) / speed_of_light_mps * dt_s;
    }

    void normalize_delays(ClusterSet &set)
    {
        const double min_abs = set.min_alive_delay_abs();
        if (!std::isfinite(min_abs))
            return;
        for (auto &c : set.clusters)
            if (c.alive)
                c.delay_s = c.delay_abs_s - min_abs;
    }

    void update_powers(ClusterSet &set, double ds_s, double r_tau, double zeta_db, Rng &rng)
    {
        if (ds_s <= 0.0 || r_tau <= 1.0)
            throw std::invalid_argument("update_powers: invalid parameters");
        double total = 0.0;
        for (auto &c : set.clusters)
        {
            if (!c.alive)
                continue;
            if (std::isnan(c.shadow_db))
                c.shadow_db = zeta_db > 0.0 ? rng.normal(0.0, zeta_db) : 0.0;
            c.power_lin = std::exp(-c.delay_s * (r_tau - 1.0) / (r_tau * ds_s)) *
                          std::pow(10.0, -c.shadow_db / 10.0);
            total += c.power_lin;
        }
        if (total <= 0.0)
            return;
        for (auto &c : set.clusters)
            if (c.alive)
                c.power_lin /= total;
    }

    int update_angles(ClusterState &c, const Vec3 &v_star, double dt_s,
                      double tau_min_guard_s, double sin_eps)
    {
        if (dt_s <= 0.0)
            throw std::invalid_argument("update_angles: dt must be > 0");
        const double tau = c.delay_abs_s;
        if (tau <= tau_min_guard_s)
            return 4; // all four updates skipped

        int skipped = 0;
        const double denom = speed_of_light_mps * tau;

        const SphericalAngles dep(c.aod_az, clamp_zenith(c.eod_zen));
        const SphericalAngles arr(c.aoa_az, clamp_zenith(c.eoa_zen));
        const auto [theta_dep, phi_dep] = spherical_unit_vectors(dep);
        const auto [theta_arr, phi_arr] = spherical_unit_vectors(arr);

        double new_aod = c.aod_az;
        double new_eod = c.eod_zen;
        double new_aoa = c.aoa_az;
        double new_eoa = c.eoa_zen;

        const double sin_eod = std::sin(dep.zenith());
        if (std::fabs(sin_eod) < sin_eps)
            ++skipped;
        else
            new_aod += v_star.dot(phi_dep) / (denom * sin_eod) * dt_s;

        new_eod += v_star.dot(theta_dep) / denom * dt_s;

        const double sin_eoa = std::sin(arr.zenith());
        if (std::fabs(sin_eoa) < sin_eps)
            ++skipped;
        else
            new_aoa += v_star.dot(phi_arr) / (denom * sin_eoa) * dt_s;

        new_eoa += v_star.dot(theta_arr) / denom * dt_s;

        // Rays ride along with the cluster mean.
        const double d_aod = new_aod - c.aod_az;
        const double d_eod = new_eod - c.eod_zen;
        const double d_aoa = new_aoa - c.aoa_az;
        const double d_eoa = new_eoa - c.eoa_zen;
        for (auto &ray : c.rays)
        {
            ray.aod_az = SphericalAngles::wrap_azimuth(ray.aod_az + d_aod);
            ray.eod_zen = clamp_zenith(ray.eod_zen + d_eod);
            ray.aoa_az = SphericalAngles::wrap_azimuth(ray.aoa_az + d_aoa);
            ray.eoa_zen = clamp_zenith(ray.eoa_zen + d_eoa);
        }
        c.aod_az = SphericalAngles::wrap_azimuth(new_aod);
        c.eod_zen = clamp_zenith(new_eod);
        c.aoa_az = SphericalAngles::wrap_azimuth(new_aoa);
        c.eoa_zen = clamp_zenith(new_eoa);
        return skipped;
    }

    Evolver::Evolver(ClusterSet initial, EvolutionParams params, ClusterGenConfig gen_cfg,
                     LosDirections los, double ds_s, std::uint64_t master_seed,
                     std::string stream_label, bool profile_powers)
        : set_(std::move(initial)), params_(std::move(params)), gen_cfg_(std::move(gen_cfg)),
          los_(los), ds_s_(ds_s), rng_(master_seed, stream_label),
          profile_powers_(profile_powers)
    {
        params_.validate();
        gen_cfg_.validate();
        if (ds_s_ <= 0.0)
            throw std::invalid_argument("Evolver: DS must be > 0");
        const double anchor = set_.min_alive_delay_abs();
        if (std::isfinite(anchor))
            last_anchor_s_ = anchor;
        if (params_.driver == BdDriver::Markov && params_.lifetime_deaths)
            for (auto &c : set_.clusters)
                if (c.alive && c.lifetime_s <= 0.0)
                    c.lifetime_s = rng_.lognormal(params_.lifetime_s.log_mu,
                                                  params_.lifetime_s.log_sigma);
    }

    ClusterState Evolver::spawn_cluster(StepRecord &rec)
    {
        const double base = set_.min_alive_delay_abs();
        const double anchor = std::isfinite(base) ? base : last_anchor_s_;

        ClusterState c;
        c.id = set_.next_id++;
        c.delay_abs_s = anchor - gen_cfg_.r_tau * ds_s_ * std::log(rng_.uniform_open());
        c.shadow_db = gen_cfg_.per_cluster_shadow_db > 0.0
                          ? rng_.normal(0.0, gen_cfg_.per_cluster_shadow_db)
                          : 0.0;
        c.birth_time_s = time_s_;
        c.alive = true;
        // Provisional pre-normalization power from the exponential profile.
        c.power_lin = std::exp(-(c.delay_abs_s - anchor) * (gen_cfg_.r_tau - 1.0) /
                               (gen_cfg_.r_tau * ds_s_)) *
                      std::pow(10.0, -c.shadow_db / 10.0);

        const double d2r = pi / 180.0;
        const double asd_deg =
            gen_cfg_.asd_deg >= 0.0 ? gen_cfg_.asd_deg : set_.lsps.asa_deg;
        const double esd_deg =
            gen_cfg_.esd_deg >= 0.0 ? gen_cfg_.esd_deg : set_.lsps.esa_deg;
        c.aoa_az = SphericalAngles::wrap_azimuth(
            los_.arrival.azimuth() + rng_.normal(0.0, set_.lsps.asa_deg * d2r));
        c.eoa_zen = clamp_zenith(los_.arrival.zenith() +
                                 rng_.laplace(set_.lsps.esa_deg * d2r / std::numbers::sqrt2));
        c.aod_az = SphericalAngles::wrap_azimuth(los_.departure.azimuth() +
                                                 rng_.normal(0.0, asd_deg * d2r));
        c.eod_zen = clamp_zenith(los_.departure.zenith() +
                                 rng_.laplace(esd_deg * d2r / std::numbers::sqrt2));

        const double split = 1.0 / std::sqrt(static_cast<double>(gen_cfg_.n_clusters));
        const double c_asa =
            (gen_cfg_.c_asa_deg >= 0.0 ? gen_cfg_.c_asa_deg : set_.lsps.asa_deg * split) * d2r;
        const double c_esa =
            (gen_cfg_.c_esa_deg >= 0.0 ? gen_cfg_.c_esa_deg : set_.lsps.esa_deg * split) * d2r;
        const double c_asd =
            (gen_cfg_.c_asd_deg >= 0.0 ? gen_cfg_.c_asd_deg : asd_deg * split) * d2r;
        const double c_esd =
            (gen_cfg_.c_esd_deg >= 0.0 ? gen_cfg_.c_esd_deg : esd_deg * split) * d2r;

        ClusterMeanAngles mean{c.aod_az, c.eod_zen, c.aoa_az, c.eoa_zen};
        c.rays = spawn_rays(mean, c_asd, c_esd, c_asa, c_esa, gen_cfg_.rays_per_cluster,
                            gen_cfg_.xpr, rng_, gen_cfg_.ray_offsets);

        if (params_.driver == BdDriver::Markov && params_.lifetime_deaths)
            c.lifetime_s = rng_.lognormal(params_.lifetime_s.log_mu,
                                          params_.lifetime_s.log_sigma);
        rec.births.push_back(c.id);
        return c;
    }

    void Evolver::kill_random_nlos(StepRecord &rec)
    {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < set_.clusters.size(); ++i)
        {
            const auto &c = set_.clusters[i];
            if (c.alive && !(params_.los_persistent && c.is_los))
                candidates.push_back(i);
        }
        if (candidates.empty())
        {
            rec.death_noop = true;
            return;
        }
        auto &victim = set_.clusters[candidates[rng_.uniform_index(candidates.size())]];
        victim.alive = false;
        rec.deaths.push_back(victim.id);
    }

    void Evolver::lifetime_reaper(StepRecord &rec)
    {
        for (auto &c : set_.clusters)
        {
            if (!c.alive || c.lifetime_s <= 0.0)
                continue;
            if (params_.los_persistent && c.is_los)
                continue;
            if (time_s_ - c.birth_time_s > c.lifetime_s)
            {
                c.alive = false;
                rec.deaths.push_back(c.id);
            }
        }
    }

    void Evolver::birth_death(StepRecord &rec, const Vec3 &velocity)
    {
        if (params_.driver == BdDriver::Poisson)
        {
            const double delta_p = displacement_m(velocity.norm(), params_.dt_bd_s);
            const double p_survive =
                survival_probability(delta_p, params_.lambda_r, params_.d_c_m);
            for (auto &c : set_.clusters)
            {
                if (!c.alive || (params_.los_persistent && c.is_los))
                    continue;
                if (rng_.uniform() >= p_survive)
                {
                    c.alive = false;
                    rec.deaths.push_back(c.id);
                }
            }
            const double mean_births =
                params_.lambda_r > 0.0
                    ? expected_new_clusters(params_.lambda_g, params_.lambda_r, delta_p,
                                            params_.d_c_m)
                    : params_.lambda_g * delta_p / params_.d_c_m;
            const auto n_births = rng_.poisson(mean_births);
            std::vector<ClusterState> born;
            born.reserve(n_births);
            for (std::uint64_t i = 0; i < n_births; ++i)
                born.push_back(spawn_cluster(rec));
            for (auto &c : born)
                set_.clusters.push_back(std::move(c));
            rec.state = classify_bd_state(rec.births.size(), rec.deaths.size());
            bd_state_ = rec.state;
            return;
        }

        // Markov driver: lifetime caps fire first, then one event per state.
        if (params_.lifetime_deaths)
            lifetime_reaper(rec);
        bd_state_ = static_cast<BdState>(
            rng_.categorical(std::span<const double>(
                params_.transition.row(static_cast<int>(bd_state_)))));
        rec.state = bd_state_;
        if (bd_state_ == BdState::S2 || bd_state_ == BdState::S3)
            kill_random_nlos(rec);
        if (bd_state_ == BdState::S1 || bd_state_ == BdState::S3)
        {
            auto c = spawn_cluster(rec);
            set_.clusters.push_back(std::move(c));
        }
    }

    const StepRecord &Evolver::step(double dt_s, const Vec3 &velocity)
    {
        return step(dt_s, velocity, params_.rotation);
    }

    const StepRecord &Evolver::step(double dt_s, const Vec3 &velocity,
                                    const RotationMatrix &rotation)
    {
        if (dt_s <= 0.0)
            throw std::invalid_argument("Evolver::step: dt must be > 0");
        time_s_ += dt_s;
        since_bd_s_ += dt_s;

        StepRecord rec;
        rec.time_s = time_s_;
        rec.state = bd_state_;

        if (since_bd_s_ >= params_.dt_bd_s - 1e-12)
        {
            since_bd_s_ -= params_.dt_bd_s;
            birth_death(rec, velocity);
            // Dead clusters are never revived; drop them so long evolutions
            // stay bounded.
            std::erase_if(set_.clusters,
                          [](const ClusterState &c) { return !c.alive; });
        }

        const Vec3 v_star = rotate_velocity(rotation, velocity);
        const bool moving = velocity.norm() > 0.0;
        if (moving)
        {
            for (auto &c : set_.clusters)
            {
                if (!c.alive)
                    continue;
                const Vec3 r_hat = direction_unit_vector(
                    SphericalAngles(c.aoa_az, clamp_zenith(c.eoa_zen)));
                rec.skipped_angle_updates +=
                    update_angles(c, v_star, dt_s, params_.tau_min_guard_s, params_.sin_eps);
                c.delay_abs_s = update_delay(c.delay_abs_s, r_hat, velocity, dt_s);
            }
        }

        normalize_delays(set_);
        if (profile_powers_)
        {
            update_powers(set_, ds_s_, gen_cfg_.r_tau, gen_cfg_.per_cluster_shadow_db, rng_);
        }
        else
        {
            double total = 0.0;
            for (const auto &c : set_.clusters)
                if (c.alive)
                    total += c.power_lin;
            if (total > 0.0)
                for (auto &c : set_.clusters)
                    if (c.alive)
                        c.power_lin /= total;
        }
        set_.timestamp_s = time_s_;
        const double anchor = set_.min_alive_delay_abs();
        if (std::isfinite(anchor))
            last_anchor_s_ = anchor;

        // The logged state is the step's realized event class.
        rec.state = classify_bd_state(rec.births.size(), rec.deaths.size());
        rec.n_clusters = set_.n_alive();
        log_.steps.push_back(std::move(rec));
        return log_.steps.back();
    }

    void EvolutionLog::write_csv(std::ostream &os) const
    {
        os << "time,state,n_clusters,births,deaths\n";
        for (const auto &s : steps)
        {
            os << s.time_s << ",S" << static_cast<int>(s.state) << ',' << s.n_clusters << ',';
            for (std::size_t i = 0; i < s.births.size(); ++i)
                os << (i ? ";" : "") << s.births[i];
            os << ',';
            for (std::size_t i = 0; i < s.deaths.size(); ++i)
                os << (i ? ";" : "") << s.deaths[i];
            os << '\n';
        }
    }

} // namespace ch5gr
