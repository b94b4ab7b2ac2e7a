// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "so3dc/angle_density.hpp"
#include "so3dc/decompound.hpp"
#include "so3dc/processes.hpp"

namespace so3dc {

//! Henyey-Greenstein phase function of theta w.r.t. sin(theta) dtheta / 2.
double hg_density(double g, double theta);

//! cos(theta) drawn from HG(g) by closed-form inverse CDF.
double hg_sample_cos(double g, RandomStream& rng);

//! Analytic CDF of cos(theta) under HG(g): P(cos theta <= mu).
double hg_cos_cdf(double g, double mu);

//! HG(g) as an AngleDensity with its closed-form sampler; named "hg:<g>".
AngleDensity hg_angle_density(double g);

//! Parses g from a name produced by hg_angle_density, if it is one.
std::optional<double> parse_hg_name(std::string const& name);

/*!
 * Plane-parallel scattering layer.
 *
 * Directions evolve by a compound Poisson process with rate 1/ell over
 * time H (speed normalized so that mean free time equals ell).
 */
struct LayerModel
{
    double thickness;  //!< H
    double mean_free_path;  //!< ell
    double g;

    void validate() const;
    double optical_depth() const { return thickness / mean_free_path; }
    CompoundModel compound_model() const;
};

/*!
 * Cumulative transmitted angular pattern C_H(theta) = P(angle(s(0), s(H)) < theta).
 *
 * Sum over delta of (2 delta + 1) exp((H/ell)(g^delta - 1)) times
 * 1/2 int_0^theta P_delta(cos xi) sin xi dxi, with the unscattered atom
 * exp(-H/ell) split off so the remaining series decays like g^delta.
 * C_H(pi) = 1; the intensity ratio with the 2 pi normalization is 4 pi C_H.
 */
double transmitted_intensity(LayerModel const& layer, double theta, int max_delta = 4000);

/*!
 * Euler-theta density of Y(T) given N(T) > 0 weighting, i.e.
 * sum_{n >= 1} P(N = n) HG(g^n)(theta). The n = 0 atom at the identity has
 * mass exp(-lambda T) and is reported separately.
 */
struct MixtureDensity
{
    double continuous = 0;
    double atom = 0;
};
MixtureDensity mixture_density(double g, double lambda_t, double theta, int nmax = 0);

//! Smallest n with Poisson(lambda_t) upper tail below 1e-12.
int mixture_terms(double lambda_t);

//! Naive ghat_d = a_hat_d^{1/d} for d >= 1 where a_hat_d > 0 and the gate passed.
std::vector<std::optional<double>> estimate_g(ParametricEstimate const& est);

// CSV writers for figure data.
void write_intensity_curve(std::ostream& os, LayerModel const& layer, int points = 512);
void write_g_table(std::ostream& os, std::vector<std::optional<double>> const& ghat);

}  // namespace so3dc
