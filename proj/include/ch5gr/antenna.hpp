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

#ifndef ch5gr_antenna_H
#define ch5gr_antenna_H

#include "ch5gr/geometry.hpp"

namespace ch5gr
{
    enum class PatternKind
    {
        Isotropic,        // unit vertical field, no gain
        OmniVertical,     // azimuth-independent, vertical polarization
        DirectionalPanel, // raised-cosine main lobe, slant polarization
    };

    // Per-polarization field amplitudes (vertical/theta, horizontal/phi).
    struct FieldResponse
    {
        double f_theta = 0.0;
        double f_phi = 0.0;
    };

    // Element field pattern. The panel pattern is a parametric raised-cosine
    // main lobe: unit at boresight, half power at the 3 dB beamwidth, floored
    // at the front-to-back ratio.
    class AntennaPattern
    {
    public:
        AntennaPattern() = default; // isotropic

        static AntennaPattern isotropic();
        static AntennaPattern omni_vertical(double gain_dbi);
        static AntennaPattern directional_panel(double gain_dbi,
                                                double beamwidth_3db_rad,
                                                double front_back_db,
                                                const SphericalAngles &boresight,
                                                double slant_rad);

        FieldResponse field(const SphericalAngles &direction) const;

        PatternKind kind() const { return kind_; }
        double gain_dbi() const { return gain_dbi_; }

    private:
        PatternKind kind_ = PatternKind::Isotropic;
        double gain_dbi_ = 0.0;
        double beamwidth_3db_ = 0.0;
        double front_back_db_ = 30.0;
        Vec3 boresight_{1.0, 0.0, 0.0};
        double slant_ = 0.0;
    };

} // namespace ch5gr

#endif
