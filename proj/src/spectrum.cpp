// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "so3dc/kernels.hpp"
#include "so3dc/legendre.hpp"
#include "so3dc/quadrature.hpp"

namespace so3dc {

ZonalSpectrum legendre_spectrum(AngleDensity::Pdf const& density, int cutoff)
{
    if (cutoff < 1)
        throw std::invalid_argument("legendre_spectrum: cutoff must be >= 1");
    ThetaQuadrature const quad(quadrature_order_for_cutoff(cutoff));
    std::vector<double> p(cutoff);
    ZonalSpectrum s(std::vector<double>(cutoff, 0.0));
    for (std::size_t i = 0; i < quad.theta.size(); ++i)
    {
        double const t = quad.theta[i];
        double const w = 0.5 * quad.weight[i] * std::sin(t) * density(t);
        legendre_all(std::cos(t), p);
        for (int d = 0; d < cutoff; ++d)
            s.a[d] += w * p[d];
    }
    return s;
}

ZonalSpectrum legendre_spectrum(AngleDensity const& density, int cutoff)
{
    return legendre_spectrum([&density](double t) { return density(t); }, cutoff);
}

double legendre_coeff(AngleDensity const& density, int delta)
{
    if (delta < 0)
        throw std::invalid_argument("legendre_coeff: negative degree");
    return legendre_spectrum(density, delta + 1).a.back();
}

void legendre_series(ZonalSpectrum const& spectrum, std::span<double const> theta,
                     std::span<double> out)
{
    std::vector<double> weighted(spectrum.a.size());
    for (std::size_t d = 0; d < weighted.size(); ++d)
        weighted[d] = (2.0 * d + 1.0) * spectrum.a[d];
    std::vector<double> x(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        x[i] = std::cos(theta[i]);
    kernels::legendre_series(weighted, x, out);
}

double legendre_series(ZonalSpectrum const& spectrum, double theta)
{
    double out = 0;
    legendre_series(spectrum, std::span<double const>(&theta, 1), std::span<double>(&out, 1));
    return out;
}

double plancherel_norm_sq(ZonalSpectrum const& spectrum)
{
    double s = 0;
    for (std::size_t d = 0; d < spectrum.a.size(); ++d)
        s += (2.0 * d + 1.0) * spectrum.a[d] * spectrum.a[d];
    return s;
}

}  // namespace so3dc
