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

#ifndef ch5gr_cir_H
#define ch5gr_cir_H

#include "ch5gr/antenna.hpp"
#include "ch5gr/cluster_gen.hpp"
#include "ch5gr/scenario.hpp"
#include "ch5gr/trace.hpp"

#include <complex>
#include <vector>

namespace ch5gr
{
    // Per-snapshot link geometry: positions, LOS angles, element locations.
    struct LinkGeometry
    {
        Vec3 bs_position;
        Vec3 ut_position;
        double d_3d_m = 0.0;
        double wavelength_m = 0.0;
        LosDirections los{SphericalAngles(0.0, 0.0), SphericalAngles(0.0, 0.0)};
        std::vector<Vec3> tx_elements{Vec3{}};
        std::vector<Vec3> rx_elements{Vec3{}};

        static LinkGeometry make(const ScenarioConfig &cfg, const Vec3 &ut_position);
    };

    // Single-ray NLOS coefficient: sqrt(P_n/M) x field patterns x the 2x2
    // polarization-phase matrix x array and Doppler phase terms.
    std::complex<double> nlos_ray_coefficient(const Ray &ray, double cluster_power,
                                              int rays_in_cluster,
                                              const AntennaPattern &tx,
                                              const AntennaPattern &rx,
                                              const Vec3 &d_rx_u, const Vec3 &d_tx_s,
                                              const Vec3 &v_ut, double wavelength_m,
                                              double time_s);

    // Deterministic specular coefficient with diag(1, -1) polarization and the
    // -2 pi d_3D / lambda static phase.
    std::complex<double> los_coefficient(const LinkGeometry &geom,
                                         const AntennaPattern &tx, const AntennaPattern &rx,
                                         const Vec3 &d_rx_u, const Vec3 &d_tx_s,
                                         const Vec3 &v_ut, double time_s);

    // K-factor combination weights: nlos = sqrt(1/(K+1)), los = sqrt(K/(K+1)).
    struct KCombination
    {
        double nlos_scale = 1.0;
        double los_scale = 0.0;
    };
    KCombination combine_los_scales(double k_factor_linear);

    enum class DelayOverflow
    {
        Truncate,
        Wrap,
    };

    struct RenderOptions
    {
        TraceDomain domain = TraceDomain::Frequency;
        DelayOverflow overflow = DelayOverflow::Truncate;
        // true: cluster powers already embed the LOS/NLOS split (CDL tables);
        // the diffuse side is not rescaled and specular-only clusters carry
        // their power through the LOS coefficient alone.
        bool table_powers = false;
    };

    // Samples the live cluster set onto the configured time/grid lattice.
    // Taps go to the nearest 1/B bin; frequency output is the exact DFT of the
    // binned taps.
    class TraceRenderer
    {
    public:
        TraceRenderer(const ScenarioConfig &cfg, RenderOptions options);

        CirTrace make_trace(int n_snapshots) const;

        // k_factor_linear < 0 disables the specular path (NLOS condition).
        void render_snapshot(CirTrace &trace, std::uint32_t t_index, double time_s,
                             const ClusterSet &set, double k_factor_linear,
                             const LinkGeometry &geom, double pl_db);

        std::size_t overflow_events() const { return overflow_events_; }

        const AntennaPattern &tx_pattern() const { return tx_; }
        const AntennaPattern &rx_pattern() const { return rx_; }

    private:
        ScenarioConfig cfg_;
        RenderOptions options_;
        AntennaPattern tx_;
        AntennaPattern rx_;
        std::size_t overflow_events_ = 0;
    };

    AntennaPattern make_pattern(const AntennaConfig &cfg, const SphericalAngles &boresight);

    // Uniform circular array element offsets; n = 1 collapses to the origin.
    std::vector<Vec3> array_element_positions(int n_elements, double radius_m,
                                              double wavelength_m);

} // namespace ch5gr

#endif
