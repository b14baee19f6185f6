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

#include "ch5gr/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ch5gr
{
    AntennaPattern AntennaPattern::isotropic()
    {
        AntennaPattern p;
        p.kind_ = PatternKind::Isotropic;
        p.gain_dbi_ = 0.0;
        return p;
    }

    AntennaPattern AntennaPattern::omni_vertical(double gain_dbi)
    {
        if (!std::isfinite(gain_dbi))
            throw std::invalid_argument("AntennaPattern: non-finite gain");
        AntennaPattern p;
        p.kind_ = PatternKind::OmniVertical;
        p.gain_dbi_ = gain_dbi;
        return p;
    }

    AntennaPattern AntennaPattern::directional_panel(double gain_dbi,
                                                     double beamwidth_3db_rad,
                                                     double front_back_db,
                                                     const SphericalAngles &boresight,
                                                     double slant_rad)
    {
        if (!std::isfinite(gain_dbi))
            throw std::invalid_argument("AntennaPattern: non-finite gain");
        if (beamwidth_3db_rad <= 0.0 || beamwidth_3db_rad >= std::numbers::pi)
            throw std::invalid_argument("AntennaPattern: invalid 3 dB beamwidth");
        if (front_back_db < 0.0)
            throw std::invalid_argument("AntennaPattern: negative front-to-back ratio");
        AntennaPattern p;
        p.kind_ = PatternKind::DirectionalPanel;
        p.gain_dbi_ = gain_dbi;
        p.beamwidth_3db_ = beamwidth_3db_rad;
        p.front_back_db_ = front_back_db;
        p.boresight_ = direction_unit_vector(boresight);
        p.slant_ = slant_rad;
        return p;
    }

    FieldResponse AntennaPattern::field(const SphericalAngles &direction) const
    {
        switch (kind_)
        {
        case PatternKind::Isotropic:
            return {1.0, 0.0};
        case PatternKind::OmniVertical:
            return {std::sqrt(std::pow(10.0, gain_dbi_ / 10.0)), 0.0};
        case PatternKind::DirectionalPanel:
        {
            const Vec3 dir = direction_unit_vector(direction);
            const double cang = std::clamp(dir.dot(boresight_), -1.0, 1.0);
            const double off = std::acos(cang); // angle off boresight

            // Raised-cosine lobe with first null at 2.6x the 3 dB width; the
            // exponent puts exactly half power at the 3 dB width.
            const double null_at = std::min(2.6 * beamwidth_3db_, std::numbers::pi);
            const double base = 0.5 * (1.0 + std::cos(std::numbers::pi *
                                                      std::min(off, null_at) / null_at));
            const double half = 0.5 * (1.0 + std::cos(std::numbers::pi *
                                                      beamwidth_3db_ / null_at));
            const double q = std::log(0.5) / std::log(half);
            const double floor_lin = std::pow(10.0, -front_back_db_ / 10.0);
            const double rel = std::max(base > 0.0 ? std::pow(base, q) : 0.0, floor_lin);
            const double amp = std::sqrt(std::pow(10.0, gain_dbi_ / 10.0) * rel);
            return {amp * std::cos(slant_), amp * std::sin(slant_)};
        }
        }
        return {0.0, 0.0};
    }

} // namespace ch5gr
