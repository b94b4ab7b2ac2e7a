// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "so3dc/random.hpp"

namespace so3dc {

/*!
 * Density of the Euler angle theta with respect to sin(theta) dtheta / 2.
 *
 * Normalization is checked at construction (tolerance 1e-6). Sampling uses a
 * closed-form sampler of cos(theta) when one is supplied, otherwise inverse
 * CDF on a 4096-point theta grid with linear interpolation.
 */
class AngleDensity
{
  public:
    using Pdf = std::function<double(double theta)>;
    using CosSampler = std::function<double(RandomStream&)>;

    AngleDensity(Pdf pdf, CosSampler cos_sampler = {}, std::string name = {});

    //! The Haar (isotropic) case, constant 1.
    static AngleDensity uniform();

    double operator()(double theta) const { return (*pdf_)(theta); }
    double sample_theta(RandomStream& rng) const;
    std::string const& name() const { return name_; }
    bool has_closed_form_sampler() const { return static_cast<bool>(*cos_sampler_); }

    static constexpr int kGridSize = 4096;
    static constexpr double kNormalizationTolerance = 1e-6;

  private:
    std::shared_ptr<Pdf const> pdf_;
    std::shared_ptr<CosSampler const> cos_sampler_;
    std::shared_ptr<std::vector<double> const> cdf_;  // empty with a sampler
    std::string name_;
};

}  // namespace so3dc
