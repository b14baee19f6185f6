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

#include "ch5gr/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double ortho_tol = 1e-9;
    }

    double Vec3::norm() const
    {
        return std::sqrt(x * x + y * y + z * z);
    }

    Vec3 Vec3::normalized() const
    {
        const double n = norm();
        if (n < 1e-300)
            throw std::invalid_argument("Vec3::normalized: zero vector");
        return {x / n, y / n, z / n};
    }

    double SphericalAngles::wrap_azimuth(double azimuth_rad)
    {
        double a = std::fmod(azimuth_rad, two_pi);
        if (a < 0.0)
            a += two_pi;
        if (a >= two_pi) // fmod can land exactly on 2pi after the add
            a -= two_pi;
        return a;
    }

    SphericalAngles::SphericalAngles(double azimuth_rad, double zenith_rad)
        : azimuth_(wrap_azimuth(azimuth_rad)), zenith_(zenith_rad)
    {
        if (!std::isfinite(azimuth_rad) || !std::isfinite(zenith_rad))
            throw std::invalid_argument("SphericalAngles: non-finite angle");
        if (zenith_ < 0.0)
        {
            if (zenith_ < -1e-9)
                throw std::invalid_argument("SphericalAngles: zenith < 0");
            zenith_ = 0.0;
        }
        else if (zenith_ > std::numbers::pi)
        {
            if (zenith_ > std::numbers::pi + 1e-9)
                throw std::invalid_argument("SphericalAngles: zenith > pi");
            zenith_ = std::numbers::pi;
        }
    }

    RotationMatrix::RotationMatrix()
        : m_{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}
    {
    }

    RotationMatrix::RotationMatrix(const std::array<std::array<double, 3>, 3> &m)
        : m_(m)
    {
        validate();
    }

    void RotationMatrix::validate() const
    {
        // R^T R = I
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k)
                    dot += m_[k][i] * m_[k][j];
                const double expect = (i == j) ? 1.0 : 0.0;
                if (std::fabs(dot - expect) > ortho_tol)
                    throw std::invalid_argument("RotationMatrix: not orthonormal");
            }
        const double det =
            m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
            m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
            m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
        if (std::fabs(det - 1.0) > ortho_tol)
            throw std::invalid_argument("RotationMatrix: determinant != +1");
    }

    RotationMatrix RotationMatrix::identity()
    {
        return RotationMatrix();
    }

    RotationMatrix RotationMatrix::about_z(double a)
    {
        const double c = std::cos(a), s = std::sin(a);
        return RotationMatrix({{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}});
    }

    RotationMatrix RotationMatrix::about_y(double a)
    {
        const double c = std::cos(a), s = std::sin(a);
        return RotationMatrix({{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}});
    }

    RotationMatrix RotationMatrix::about_x(double a)
    {
        const double c = std::cos(a), s = std::sin(a);
        return RotationMatrix({{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}});
    }

    Vec3 RotationMatrix::apply(const Vec3 &v) const
    {
        return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
                m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
                m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
    }

    std::pair<Vec3, Vec3> spherical_unit_vectors(const SphericalAngles &angles)
    {
        const double st = std::sin(angles.zenith());
        const double ct = std::cos(angles.zenith());
        const double sp = std::sin(angles.azimuth());
        const double cp = std::cos(angles.azimuth());
        const Vec3 theta_hat{ct * cp, ct * sp, -st};
        const Vec3 phi_hat{-sp, cp, 0.0};
        return {theta_hat, phi_hat};
    }

    Vec3 direction_unit_vector(const SphericalAngles &angles)
    {
        const double st = std::sin(angles.zenith());
        const double ct = std::cos(angles.zenith());
        return {st * std::cos(angles.azimuth()), st * std::sin(angles.azimuth()), ct};
    }

    Vec3 rotate_velocity(const RotationMatrix &rot, const Vec3 &v)
    {
        return rot.apply(v);
    }

} // namespace ch5gr
