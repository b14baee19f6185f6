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

#ifndef ch5gr_geometry_H
#define ch5gr_geometry_H

#include <array>
#include <utility>

namespace ch5gr
{
    inline constexpr double speed_of_light_mps = 299792458.0;

    // Cartesian 3-vector in the global coordinate system. Units depend on use:
    // meters (positions), m/s (velocities), or unitless (direction vectors).
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        Vec3 operator*(double k) const { return {k * x, k * y, k * z}; }
        Vec3 operator-() const { return {-x, -y, -z}; }

        double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        double norm() const;
        Vec3 normalized() const; // throws on (near-)zero vectors
        Vec3 cross(const Vec3 &o) const
        {
            return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
        }
    };

    inline Vec3 operator*(double k, const Vec3 &v) { return v * k; }

    // Azimuth phi in [0, 2pi), zenith theta in [0, pi]. Azimuth is wrapped on
    // construction; zenith outside its range is rejected (tiny numerical
    // overshoot is clamped).
    class SphericalAngles
    {
    public:
        SphericalAngles(double azimuth_rad, double zenith_rad);

        double azimuth() const { return azimuth_; }
        double zenith() const { return zenith_; }

        static double wrap_azimuth(double azimuth_rad); // into [0, 2pi)

    private:
        double azimuth_;
        double zenith_;
    };

    // Proper rotation, validated orthonormal with det +1 (1e-9) on construction.
    class RotationMatrix
    {
    public:
        RotationMatrix(); // identity
        explicit RotationMatrix(const std::array<std::array<double, 3>, 3> &m);

        static RotationMatrix identity();
        static RotationMatrix about_z(double angle_rad);
        static RotationMatrix about_y(double angle_rad);
        static RotationMatrix about_x(double angle_rad);

        Vec3 apply(const Vec3 &v) const;
        double at(int row, int col) const { return m_[row][col]; }

    private:
        std::array<std::array<double, 3>, 3> m_;
        void validate() const;
    };

    // Spherical basis vectors for the given direction:
    //   theta_hat = (cos t cos p, cos t sin p, -sin t)
    //   phi_hat   = (-sin p, cos p, 0)
    std::pair<Vec3, Vec3> spherical_unit_vectors(const SphericalAngles &angles);

    // Radial unit vector (sin t cos p, sin t sin p, cos t).
    Vec3 direction_unit_vector(const SphericalAngles &angles);

    // Applies a rotation to a velocity vector; an isometry.
    Vec3 rotate_velocity(const RotationMatrix &rot, const Vec3 &v);

} // namespace ch5gr

#endif
