// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "so3dc/csv.hpp"
#include "so3dc/legendre.hpp"

namespace so3dc {
namespace {

void check_g(double g)
{
    if (!(g >= 0 && g < 1))
        throw std::invalid_argument("Henyey-Greenstein: g must lie in [0, 1)");
}

}  // namespace

double hg_density(double g, double theta)
{
    check_g(g);
    double const h = std::sin(0.5 * theta);
    double const denom = (1.0 - g) * (1.0 - g) + 4.0 * g * h * h;
    return (1.0 - g * g) / (denom * std::sqrt(denom));
}

double hg_sample_cos(double g, RandomStream& rng)
{
    double const u = rng.uniform();
    if (g < 1e-8)
        return 2.0 * u - 1.0;
    double const frac = (1.0 - g * g) / (1.0 - g + 2.0 * g * u);
    return std::clamp((1.0 + g * g - frac * frac) / (2.0 * g), -1.0, 1.0);
}

double hg_cos_cdf(double g, double mu)
{
    check_g(g);
    mu = std::clamp(mu, -1.0, 1.0);
    if (g < 1e-8)
        return 0.5 * (1.0 + mu);
    double const f = (1.0 - g * g) / (2.0 * g)
                     * (1.0 / std::sqrt(1.0 + g * g - 2.0 * g * mu) - 1.0 / (1.0 + g));
    return std::clamp(f, 0.0, 1.0);
}

AngleDensity hg_angle_density(double g)
{
    check_g(g);
    return AngleDensity([g](double theta) { return hg_density(g, theta); },
                        [g](RandomStream& rng) { return hg_sample_cos(g, rng); },
                        "hg:" + csv::format_double(g));
}

std::optional<double> parse_hg_name(std::string const& name)
{
    if (name.rfind("hg:", 0) != 0)
        return std::nullopt;
    try
    {
        return csv::parse_double(std::string_view(name).substr(3));
    }
    catch (std::exception const&)
    {
        return std::nullopt;
    }
}

void LayerModel::validate() const
{
    if (!(thickness > 0))
        throw std::invalid_argument("LayerModel: thickness must be > 0");
    if (!(mean_free_path > 0))
        throw std::invalid_argument("LayerModel: mean free path must be > 0");
    check_g(g);
}

CompoundModel LayerModel::compound_model() const
{
    validate();
    return CompoundModel(1.0 / mean_free_path, thickness, 0.0, hg_angle_density(g));
}

double transmitted_intensity(LayerModel const& layer, double theta, int max_delta)
{
    layer.validate();
    if (theta <= 0)
        return 0.0;
    if (theta >= std::numbers::pi)
        return 1.0;
    double const tau = layer.optical_depth();
    double const atom = std::exp(-tau);
    double const x = std::cos(theta);

    // continuous part: coefficients exp(-tau) expm1(tau g^d)
    double sum = 0.5 * (1.0 - atom) * (1.0 - x);
    double p_prev = 1.0;  // P_{d-1}
    double p_cur = x;     // P_d
    double gd = 1.0;
    for (int d = 1; d <= max_delta; ++d)
    {
        gd *= layer.g;
        double const p_next = ((2.0 * d + 1.0) * x * p_cur - d * p_prev) / (d + 1.0);
        double const c = atom * std::expm1(tau * gd);
        sum += 0.5 * c * (p_prev - p_next);
        p_prev = p_cur;
        p_cur = p_next;
        if (c < 1e-17)
            break;
    }
    return atom + sum;
}

int mixture_terms(double lambda_t)
{
    // accumulate the Poisson CDF until the upper tail is negligible
    double pmf = std::exp(-lambda_t);
    double cdf = pmf;
    int n = 0;
    while (1.0 - cdf > 1e-12 && n < 10000)
    {
        ++n;
        pmf *= lambda_t / n;
        cdf += pmf;
        if (pmf < 1e-300)
            break;
    }
    return std::max(n, 1) + 5;
}

MixtureDensity mixture_density(double g, double lambda_t, double theta, int nmax)
{
    check_g(g);
    if (nmax <= 0)
        nmax = mixture_terms(lambda_t);
    MixtureDensity m;
    m.atom = std::exp(-lambda_t);
    double pmf = m.atom;
    double gn = 1.0;
    for (int n = 1; n <= nmax; ++n)
    {
        pmf *= lambda_t / n;
        gn *= g;
        m.continuous += pmf * hg_density(gn, theta);
    }
    return m;
}

std::vector<std::optional<double>> estimate_g(ParametricEstimate const& est)
{
    std::vector<std::optional<double>> out(est.a_hat.size());
    for (std::size_t d = 1; d < est.a_hat.size(); ++d)
    {
        double const a = est.a_hat[d];
        if (est.gate_passed[d] && a > 0)
            out[d] = std::pow(a, 1.0 / static_cast<double>(d));
    }
    return out;
}

void write_intensity_curve(std::ostream& os, LayerModel const& layer, int points)
{
    os << "theta,C_H\n";
    for (int i = 0; i < points; ++i)
    {
        double const theta = std::numbers::pi * i / (points - 1);
        os << csv::format_double(theta) << ',' << csv::format_double(transmitted_intensity(layer, theta))
           << '\n';
    }
}

void write_g_table(std::ostream& os, std::vector<std::optional<double>> const& ghat)
{
    os << "delta,g_hat\n";
    for (std::size_t d = 0; d < ghat.size(); ++d)
    {
        os << d << ',';
        if (ghat[d])
            os << csv::format_double(*ghat[d]);
        os << '\n';
    }
}

}  // namespace so3dc
