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

#include "ch5gr/cir.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        std::complex<double> phase(double radians)
        {
            return {std::cos(radians), std::sin(radians)};
        }
    }

    std::vector<Vec3> array_element_positions(int n_elements, double radius_m,
                                              double wavelength_m)
    {
        if (n_elements < 1)
            throw std::invalid_argument("array_element_positions: need >= 1 element");
        if (n_elements == 1)
            return {Vec3{}};
        double r = radius_m;
        if (r <= 0.0)
        {
            // lambda/2 chord spacing around the circle
            r = wavelength_m / 4.0 / std::sin(pi / n_elements);
        }
        std::vector<Vec3> out;
        out.reserve(static_cast<std::size_t>(n_elements));
        for (int i = 0; i < n_elements; ++i)
        {
            const double a = 2.0 * pi * i / n_elements;
            out.push_back({r * std::cos(a), r * std::sin(a), 0.0});
        }
        return out;
    }

    AntennaPattern make_pattern(const AntennaConfig &cfg, const SphericalAngles &boresight)
    {
        switch (cfg.kind)
        {
        case PatternKind::Isotropic:
            return AntennaPattern::isotropic();
        case PatternKind::OmniVertical:
            return AntennaPattern::omni_vertical(cfg.gain_dbi);
        case PatternKind::DirectionalPanel:
            return AntennaPattern::directional_panel(
                cfg.gain_dbi, cfg.beamwidth_3db_deg * pi / 180.0, cfg.front_back_db,
                boresight, cfg.slant_deg * pi / 180.0);
        }
        return AntennaPattern::isotropic();
    }

    LinkGeometry LinkGeometry::make(const ScenarioConfig &cfg, const Vec3 &ut_position)
    {
        LinkGeometry g;
        g.bs_position = cfg.bs_position;
        g.ut_position = ut_position;
        g.d_3d_m = (ut_position - cfg.bs_position).norm();
        g.wavelength_m = cfg.wavelength_m();
        g.los = los_directions(cfg.bs_position, ut_position);
        g.tx_elements = array_element_positions(cfg.tx_antenna.n_elements,
                                                cfg.tx_antenna.array_radius_m,
                                                g.wavelength_m);
        g.rx_elements = array_element_positions(cfg.rx_antenna.n_elements,
                                                cfg.rx_antenna.array_radius_m,
                                                g.wavelength_m);
        return g;
    }

    std::complex<double> nlos_ray_coefficient(const Ray &ray, double cluster_power,
                                              int rays_in_cluster,
                                              const AntennaPattern &tx,
                                              const AntennaPattern &rx,
                                              const Vec3 &d_rx_u, const Vec3 &d_tx_s,
                                              const Vec3 &v_ut, double wavelength_m,
                                              double time_s)
    {
        if (cluster_power < 0.0 || rays_in_cluster < 1)
            throw std::invalid_argument("nlos_ray_coefficient: invalid power or ray count");
        if (ray.xpr_linear <= 0.0)
            throw std::invalid_argument("nlos_ray_coefficient: XPR must be > 0");
        if (wavelength_m <= 0.0)
            throw std::invalid_argument("nlos_ray_coefficient: invalid wavelength");

        const SphericalAngles arrival(ray.aoa_az, ray.eoa_zen);
        const SphericalAngles departure(ray.aod_az, ray.eod_zen);
        const FieldResponse fr = rx.field(arrival);
        const FieldResponse ft = tx.field(departure);

        const double cross = std::sqrt(1.0 / ray.xpr_linear);
        const std::complex<double> m00 = phase(ray.phase_tt);
        const std::complex<double> m01 = cross * phase(ray.phase_tp);
        const std::complex<double> m10 = cross * phase(ray.phase_pt);
        const std::complex<double> m11 = phase(ray.phase_pp);

        const std::complex<double> pol = fr.f_theta * (m00 * ft.f_theta + m01 * ft.f_phi) +
                                         fr.f_phi * (m10 * ft.f_theta + m11 * ft.f_phi);

        const Vec3 r_rx = direction_unit_vector(arrival);
        const Vec3 r_tx = direction_unit_vector(departure);
        const std::complex<double> array_rx = phase(2.0 * pi * r_rx.dot(d_rx_u) / wavelength_m);
        const std::complex<double> array_tx = phase(2.0 * pi * r_tx.dot(d_tx_s) / wavelength_m);
        const std::complex<double> doppler =
            phase(2.0 * pi * r_rx.dot(v_ut) / wavelength_m * time_s);

        return std::sqrt(cluster_power / rays_in_cluster) * pol * array_rx * array_tx *
               doppler;
    }

    std::complex<double> los_coefficient(const LinkGeometry &geom, const AntennaPattern &tx,
                                         const AntennaPattern &rx, const Vec3 &d_rx_u,
                                         const Vec3 &d_tx_s, const Vec3 &v_ut, double time_s)
    {
        const FieldResponse fr = rx.field(geom.los.arrival);
        const FieldResponse ft = tx.field(geom.los.departure);
        // diag(1, -1) polarization coupling
        const double pol = fr.f_theta * ft.f_theta - fr.f_phi * ft.f_phi;

        const Vec3 r_rx = direction_unit_vector(geom.los.arrival);
        const Vec3 r_tx = direction_unit_vector(geom.los.departure);
        const std::complex<double> array_rx =
            phase(2.0 * pi * r_rx.dot(d_rx_u) / geom.wavelength_m);
        const std::complex<double> array_tx =
            phase(2.0 * pi * r_tx.dot(d_tx_s) / geom.wavelength_m);
        const std::complex<double> doppler =
            phase(2.0 * pi * r_rx.dot(v_ut) / geom.wavelength_m * time_s);
        const std::complex<double> range = phase(-2.0 * pi * geom.d_3d_m / geom.wavelength_m);

        return pol * array_rx * array_tx * doppler * range;
    }

    KCombination combine_los_scales(double k_factor_linear)
    {
        if (k_factor_linear < 0.0)
            throw std::invalid_argument("combine_los_scales: K must be >= 0");
        return {std::sqrt(1.0 / (k_factor_linear + 1.0)),
                std::sqrt(k_factor_linear / (k_factor_linear + 1.0))};
    }

    TraceRenderer::TraceRenderer(const ScenarioConfig &cfg, RenderOptions options)
        : cfg_(cfg), options_(options)
    {
        cfg_.validate();
        // Panel boresight points at the terminal's initial position.
        const LosDirections los = los_directions(cfg_.bs_position, cfg_.ut_position);
        tx_ = make_pattern(cfg_.tx_antenna, los.departure);
        rx_ = make_pattern(cfg_.rx_antenna, los.arrival);
    }

    CirTrace TraceRenderer::make_trace(int n_snapshots) const
    {
        const auto n = static_cast<std::uint32_t>(cfg_.n_freq_points);
        const double grid_step = options_.domain == TraceDomain::Frequency
                                     ? cfg_.bandwidth_hz / n
                                     : 1.0 / cfg_.bandwidth_hz;
        return CirTrace(static_cast<std::uint32_t>(n_snapshots), n,
                        static_cast<std::uint32_t>(cfg_.rx_antenna.n_elements),
                        static_cast<std::uint32_t>(cfg_.tx_antenna.n_elements),
                        options_.domain, 1.0 / cfg_.snapshot_rate_hz, grid_step);
    }

    void TraceRenderer::render_snapshot(CirTrace &trace, std::uint32_t t_index,
                                        double time_s, const ClusterSet &set,
                                        double k_factor_linear, const LinkGeometry &geom,
                                        double pl_db)
    {
        const std::uint32_t n = trace.n_grid();
        const double tap_step = 1.0 / cfg_.bandwidth_hz;
        const Vec3 v_ut = cfg_.ut_velocity();
        const bool with_los = k_factor_linear >= 0.0;
        KCombination kc = with_los ? combine_los_scales(k_factor_linear)
                                   : KCombination{1.0, 0.0};
        if (options_.table_powers)
            kc.nlos_scale = 1.0;
        const float ls_scale = static_cast<float>(std::pow(10.0, -pl_db / 20.0));

        std::vector<std::pair<std::uint32_t, std::complex<double>>> taps;
        for (std::uint32_t u = 0; u < trace.n_rx(); ++u)
        {
            for (std::uint32_t s = 0; s < trace.n_tx(); ++s)
            {
                taps.clear();
                const Vec3 &d_rx = geom.rx_elements[u];
                const Vec3 &d_tx = geom.tx_elements[s];

                for (const auto &c : set.clusters)
                {
                    if (!c.alive || c.specular_only)
                        continue;
                    auto bin = static_cast<std::int64_t>(std::llround(c.delay_s / tap_step));
                    if (bin >= static_cast<std::int64_t>(n))
                    {
                        if (options_.overflow == DelayOverflow::Truncate)
                        {
                            ++overflow_events_;
                            continue;
                        }
                        ++overflow_events_;
                        bin %= static_cast<std::int64_t>(n);
                    }
                    std::complex<double> g = 0.0;
                    for (const auto &ray : c.rays)
                        g += nlos_ray_coefficient(ray, c.power_lin,
                                                  static_cast<int>(c.rays.size()), tx_, rx_,
                                                  d_rx, d_tx, v_ut, geom.wavelength_m,
                                                  time_s);
                    taps.emplace_back(static_cast<std::uint32_t>(bin), kc.nlos_scale * g);
                }

                if (with_los && kc.los_scale > 0.0)
                {
                    // The specular path rides at the minimum cluster delay.
                    taps.emplace_back(0u, kc.los_scale * los_coefficient(geom, tx_, rx_,
                                                                         d_rx, d_tx, v_ut,
                                                                         time_s));
                }

                if (options_.domain == TraceDomain::Delay)
                {
                    for (const auto &[bin, g] : taps)
                        trace.at(t_index, bin, u, s) +=
                            std::complex<float>(static_cast<float>(g.real()),
                                                static_cast<float>(g.imag()));
                }
                else
                {
                    for (std::uint32_t i = 0; i < n; ++i)
                    {
                        std::complex<double> h = 0.0;
                        for (const auto &[bin, g] : taps)
                            h += g * phase(-2.0 * pi * static_cast<double>(i) *
                                           static_cast<double>(bin) / n);
                        trace.at(t_index, i, u, s) +=
                            std::complex<float>(static_cast<float>(h.real()),
                                                static_cast<float>(h.imag()));
                    }
                }

                for (std::uint32_t i = 0; i < n; ++i)
                    trace.at(t_index, i, u, s) *= ls_scale;
            }
        }
    }

} // namespace ch5gr
