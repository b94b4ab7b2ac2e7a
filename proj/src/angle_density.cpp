// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/angle_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "so3dc/quadrature.hpp"

namespace so3dc {

AngleDensity::AngleDensity(Pdf pdf, CosSampler cos_sampler, std::string name)
    : pdf_(std::make_shared<Pdf const>(std::move(pdf)))
    , cos_sampler_(std::make_shared<CosSampler const>(std::move(cos_sampler)))
    , name_(std::move(name))
{
    if (!*pdf_)
        throw std::invalid_argument("AngleDensity: empty density");
    ThetaQuadrature const quad(64);
    double const total = quad.integrate_zonal(*pdf_);
    if (!(std::abs(total - 1.0) <= kNormalizationTolerance))
    {
        throw std::invalid_argument("AngleDensity '" + name_
                                    + "': not normalized (integral = " + std::to_string(total)
                                    + ")");
    }
    if (*cos_sampler_)
        return;

    auto cdf = std::make_shared<std::vector<double>>(kGridSize, 0.0);
    GaussLegendreRule const rule = gauss_legendre(8);
    double const h = std::numbers::pi / (kGridSize - 1);
    auto const& f = *pdf_;
    for (int i = 1; i < kGridSize; ++i)
    {
        double cell = integrate_interval(
            [&f](double t) { return 0.5 * f(t) * std::sin(t); }, (i - 1) * h, i * h, rule);
        (*cdf)[i] = (*cdf)[i - 1] + cell;
    }
    double const last = cdf->back();
    for (double& c : *cdf)
        c /= last;
    cdf_ = std::move(cdf);
}

AngleDensity AngleDensity::uniform()
{
    return AngleDensity([](double) { return 1.0; },
                        [](RandomStream& rng) { return 2.0 * rng.uniform() - 1.0; },
                        "uniform");
}

double AngleDensity::sample_theta(RandomStream& rng) const
{
    if (*cos_sampler_)
        return std::acos(std::clamp((*cos_sampler_)(rng), -1.0, 1.0));
    auto const& cdf = *cdf_;
    double const u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cdf.begin(), 1),
                                           cdf.size() - 1);
    std::size_t lo = hi - 1;
    double const h = std::numbers::pi / (kGridSize - 1);
    double const span = cdf[hi] - cdf[lo];
    double const frac = span > 0 ? (u - cdf[lo]) / span : 0.5;
    return (lo + frac) * h;
}

}  // namespace so3dc
