// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "so3dc/angle_density.hpp"

namespace so3dc {

//! Default Legendre cutoff: coefficients a_0 .. a_30.
inline constexpr int kDefaultCutoff = 31;

//! Real Legendre coefficients a_0 .. a_{l-1} of a zonal function.
struct ZonalSpectrum
{
    std::vector<double> a;

    ZonalSpectrum() = default;
    explicit ZonalSpectrum(std::vector<double> coeffs) : a(std::move(coeffs)) {}

    int cutoff() const { return static_cast<int>(a.size()); }
    double operator[](int delta) const { return a[delta]; }
    double& operator[](int delta) { return a[delta]; }
};

//! a_delta = 1/2 int p(theta) P_delta(cos theta) sin theta dtheta.
double legendre_coeff(AngleDensity const& density, int delta);

//! a_0 .. a_{cutoff-1} from one quadrature pass.
ZonalSpectrum legendre_spectrum(AngleDensity::Pdf const& density, int cutoff);
ZonalSpectrum legendre_spectrum(AngleDensity const& density, int cutoff);

//! sum_{delta<l} (2 delta + 1) a_delta P_delta(cos theta).
double legendre_series(ZonalSpectrum const& spectrum, double theta);

//! Vectorized legendre_series over many theta values.
void legendre_series(ZonalSpectrum const& spectrum, std::span<double const> theta,
                     std::span<double> out);

//! sum_delta (2 delta + 1) a_delta^2: squared L2(SO(3)) norm of the series.
double plancherel_norm_sq(ZonalSpectrum const& spectrum);

}  // namespace so3dc
