// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace so3dc {

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

//! Node count used for theta integrals at Legendre cutoff l.
inline int quadrature_order_for_cutoff(int cutoff)
{
    return cutoff < 15 ? 64 : 4 * (cutoff + 1);
}

/*!
 * Quadrature nodes on [0, pi] for zonal integrals.
 *
 * Gauss-Legendre panels graded geometrically toward theta = 0 so that
 * forward-peaked phase functions are resolved. Weights integrate dtheta.
 */
struct ThetaQuadrature
{
    std::vector<double> theta;
    std::vector<double> weight;

    explicit ThetaQuadrature(int order, int halvings = 40);

    //! Integral of f(theta) over [0, pi].
    double integrate(std::function<double(double)> const& f) const;
    //! Integral of f(theta) sin(theta) / 2 over [0, pi].
    double integrate_zonal(std::function<double(double)> const& f) const;
};

//! Integral of f over [a, b] with a fixed Gauss-Legendre rule.
double integrate_interval(std::function<double(double)> const& f, double a, double b,
                          GaussLegendreRule const& rule);

}  // namespace so3dc
