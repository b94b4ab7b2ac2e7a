// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <numbers>

#include "so3dc/random.hpp"

namespace so3dc {

class AngleDensity;

using Mat3 = std::array<std::array<double, 3>, 3>;

//! ZYZ Euler angles: R = Rz(phi) Ry(theta) Rz(psi).
struct EulerZYZ
{
    double phi = 0;    //!< [0, 2pi)
    double theta = 0;  //!< [0, pi]
    double psi = 0;    //!< [0, 2pi)
};

/*!
 * Element of SO(3) stored as a unit quaternion (w, x, y, z).
 *
 * The canonical representative has w >= 0; q and -q describe the same
 * rotation. Every constructor and operation renormalizes.
 */
class Rotation
{
  public:
    //! Identity.
    constexpr Rotation() = default;

    //! From (not necessarily normalized) quaternion components.
    static Rotation from_quaternion(double w, double x, double y, double z);
    //! Rotation by angle about a unit axis (axis is normalized here).
    static Rotation from_axis_angle(std::array<double, 3> axis, double angle);

    static Rotation rz(double angle);
    static Rotation ry(double angle);

    double w() const { return q_[0]; }
    double x() const { return q_[1]; }
    double y() const { return q_[2]; }
    double z() const { return q_[3]; }
    const std::array<double, 4>& quaternion() const { return q_; }

    Mat3 matrix() const;

    //! Entry R_zz = cos of the Euler angle theta.
    double cos_euler_theta() const { return 1.0 - 2.0 * (q_[1] * q_[1] + q_[2] * q_[2]); }
    //! cos(omega) of the rotation angle, 2w^2 - 1.
    double cos_rotation_angle() const { return 2.0 * q_[0] * q_[0] - 1.0; }

  private:
    std::array<double, 4> q_{1.0, 0.0, 0.0, 0.0};
};

Rotation compose(Rotation const& a, Rotation const& b);
Rotation inverse(Rotation const& r);

//! Rotation angle in [0, pi], computed as 2 acos|w|.
double rotation_angle(Rotation const& r);

Rotation from_euler_zyz(EulerZYZ const& e);
//! Inverse of from_euler_zyz; psi = 0 when sin(theta) is below 1e-9.
EulerZYZ to_euler_zyz(Rotation const& r);

//! Haar-uniform rotation (normalized 4D Gaussian).
Rotation sample_haar(RandomStream& rng);

//! Uniform direction on the unit sphere.
std::array<double, 3> sample_unit_vector(RandomStream& rng);

/*!
 * Zonal rotation: phi and psi uniform, theta from a density with respect to
 * sin(theta) dtheta / 2.
 */
Rotation sample_zonal(AngleDensity const& theta_density, RandomStream& rng);

//! Frobenius distance between rotation matrices.
double matrix_distance(Rotation const& a, Rotation const& b);

}  // namespace so3dc
