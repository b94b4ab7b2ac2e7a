// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/rotation.hpp"

#include <cmath>
#include <limits>

#include "so3dc/angle_density.hpp"

namespace so3dc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGimbalTolerance = 1e-9;

double wrap_two_pi(double angle)
{
    double r = std::fmod(angle, kTwoPi);
    if (r < 0)
        r += kTwoPi;
    // fmod of a value just below 0 can round up to exactly 2pi
    return r >= kTwoPi ? 0.0 : r;
}

}  // namespace

Rotation Rotation::from_quaternion(double w, double x, double y, double z)
{
    double norm = std::sqrt(w * w + x * x + y * y + z * z);
    // already unit to rounding: keep the bits so that text round trips are exact
    if (std::abs(norm - 1.0) <= 4 * std::numeric_limits<double>::epsilon())
        norm = 1.0;
    if (w < 0)
        norm = -norm;
    Rotation r;
    r.q_ = {w / norm, x / norm, y / norm, z / norm};
    return r;
}

Rotation Rotation::from_axis_angle(std::array<double, 3> axis, double angle)
{
    double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    double s = std::sin(0.5 * angle) / n;
    return from_quaternion(std::cos(0.5 * angle), s * axis[0], s * axis[1], s * axis[2]);
}

Rotation Rotation::rz(double angle)
{
    return from_quaternion(std::cos(0.5 * angle), 0.0, 0.0, std::sin(0.5 * angle));
}

Rotation Rotation::ry(double angle)
{
    return from_quaternion(std::cos(0.5 * angle), 0.0, std::sin(0.5 * angle), 0.0);
}

Mat3 Rotation::matrix() const
{
    auto const [w, x, y, z] = q_;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

Rotation compose(Rotation const& a, Rotation const& b)
{
    auto const [aw, ax, ay, az] = a.quaternion();
    auto const [bw, bx, by, bz] = b.quaternion();
    return Rotation::from_quaternion(aw * bw - ax * bx - ay * by - az * bz,
                                     aw * bx + ax * bw + ay * bz - az * by,
                                     aw * by - ax * bz + ay * bw + az * bx,
                                     aw * bz + ax * by - ay * bx + az * bw);
}

Rotation inverse(Rotation const& r)
{
    return Rotation::from_quaternion(r.w(), -r.x(), -r.y(), -r.z());
}

double rotation_angle(Rotation const& r)
{
    double w = std::min(1.0, std::abs(r.w()));
    // asin form is better conditioned near w = 1
    if (w > 0.5)
    {
        double v = std::sqrt(r.x() * r.x() + r.y() * r.y() + r.z() * r.z());
        return 2.0 * std::asin(std::min(1.0, v));
    }
    return 2.0 * std::acos(w);
}

Rotation from_euler_zyz(EulerZYZ const& e)
{
    double const ct = std::cos(0.5 * e.theta);
    double const st = std::sin(0.5 * e.theta);
    double const sum = 0.5 * (e.phi + e.psi);
    double const diff = 0.5 * (e.phi - e.psi);
    return Rotation::from_quaternion(
        ct * std::cos(sum), -st * std::sin(diff), st * std::cos(diff), ct * std::sin(sum));
}

EulerZYZ to_euler_zyz(Rotation const& r)
{
    auto const [w, x, y, z] = r.quaternion();
    double const c = std::hypot(w, z);
    double const s = std::hypot(x, y);
    EulerZYZ e;
    e.theta = 2.0 * std::atan2(s, c);
    bool const near_identity = std::sin(e.theta) < kGimbalTolerance && e.theta < 1.0;
    bool const near_flip = std::sin(e.theta) < kGimbalTolerance && e.theta >= 1.0;
    if (near_identity)
    {
        e.phi = wrap_two_pi(2.0 * std::atan2(z, w));
        e.psi = 0;
    }
    else if (near_flip)
    {
        e.phi = wrap_two_pi(2.0 * std::atan2(-x, y));
        e.psi = 0;
    }
    else
    {
        double const sum = std::atan2(z, w);
        double const diff = std::atan2(-x, y);
        e.phi = wrap_two_pi(sum + diff);
        e.psi = wrap_two_pi(sum - diff);
    }
    return e;
}

Rotation sample_haar(RandomStream& rng)
{
    double w = rng.normal();
    double x = rng.normal();
    double y = rng.normal();
    double z = rng.normal();
    return Rotation::from_quaternion(w, x, y, z);
}

std::array<double, 3> sample_unit_vector(RandomStream& rng)
{
    double const cz = 2.0 * rng.uniform() - 1.0;
    double const phi = kTwoPi * rng.uniform();
    double const sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    return {sz * std::cos(phi), sz * std::sin(phi), cz};
}

Rotation sample_zonal(AngleDensity const& theta_density, RandomStream& rng)
{
    EulerZYZ e;
    e.phi = kTwoPi * rng.uniform();
    e.theta = theta_density.sample_theta(rng);
    e.psi = kTwoPi * rng.uniform();
    return from_euler_zyz(e);
}

double matrix_distance(Rotation const& a, Rotation const& b)
{
    Mat3 const ma = a.matrix();
    Mat3 const mb = b.matrix();
    double sum = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            sum += (ma[i][j] - mb[i][j]) * (ma[i][j] - mb[i][j]);
    return std::sqrt(sum);
}

}  // namespace so3dc
