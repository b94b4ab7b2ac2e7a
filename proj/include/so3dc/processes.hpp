// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "so3dc/angle_density.hpp"
#include "so3dc/rotation.hpp"
#include "so3dc/spectrum.hpp"

namespace so3dc {

/*!
 * Generative configuration of Z = M Y(T).
 *
 * Y is a left compound Poisson process with rate lambda and i.i.d. zonal
 * jumps; M is Brownian (heat kernel) noise with variance parameter sigma2.
 */
class CompoundModel
{
  public:
    CompoundModel(double lambda, double horizon, double sigma2, AngleDensity jump_law);

    double lambda() const { return lambda_; }
    double horizon() const { return horizon_; }
    double sigma2() const { return sigma2_; }
    AngleDensity const& jump_law() const { return jump_law_; }
    double mean_jumps() const { return lambda_ * horizon_; }

  private:
    double lambda_;
    double horizon_;
    double sigma2_;
    AngleDensity jump_law_;
};

//! Poisson count; Knuth's multiplication method for mean <= 30.
std::uint64_t sample_poisson(double mean, RandomStream& rng);

struct CompoundDraw
{
    Rotation value;
    std::uint64_t jumps = 0;
};

//! Y(T) = X_0 X_1 ... X_N with X_0 = e, product taken left to right.
CompoundDraw simulate_compound_counted(CompoundModel const& model, RandomStream& rng);
Rotation simulate_compound(CompoundModel const& model, RandomStream& rng);

/*!
 * Sampler of the heat kernel on SO(3) at variance parameter sigma2.
 *
 * The rotation angle omega has density K(omega) (1 - cos omega) / pi where
 * K = sum_delta (2 delta + 1) exp(-delta (delta + 1) sigma2 / 2) chi_delta.
 * For sigma2 < 1 the density is evaluated through the Poisson-summed (image)
 * form of the same series; otherwise the series is truncated at
 * kSeriesMaxDelta and checked for negativity. omega is drawn by inverse CDF
 * on a kGridSize-point grid and the axis is uniform.
 */
class HeatKernelSampler
{
  public:
    explicit HeatKernelSampler(double sigma2);

    Rotation sample(RandomStream& rng) const;
    double sigma2() const { return sigma2_; }
    //! Density of the rotation angle with respect to d omega.
    double angle_density(double omega) const;

    static double series_angle_density(double sigma2, double omega, int max_delta);
    static double image_angle_density(double sigma2, double omega);

    static constexpr int kSeriesMaxDelta = 64;
    static constexpr int kGridSize = 4096;
    static constexpr double kImageThreshold = 1.0;

  private:
    double sigma2_;
    double omega_max_ = 0;
    std::vector<double> cdf_;
};

Rotation sample_heat_kernel(double sigma2, RandomStream& rng);

/*!
 * Heat-kernel draw without a precomputed grid.
 *
 * For sigma2 <= 1 the angle is drawn by rejection from the Maxwell law
 * sigma |N(0, I_3)|; larger sigma2 falls back to HeatKernelSampler.
 */
Rotation sample_heat_increment(double sigma2, RandomStream& rng);

//! Ratio of the heat-kernel angle density to the Maxwell proposal, scaled to 1 at omega = 0.
double heat_maxwell_ratio(double sigma2, double omega);
inline constexpr double kHeatMaxwellBound = 1.0 + 2.0 / 3.141592653589793 + 1e-6;

//! Z = M Y(T) with M from a heat kernel sampler at model.sigma2().
Rotation simulate_noisy_observation(CompoundModel const& model, HeatKernelSampler const& noise,
                                    RandomStream& rng);
Rotation simulate_noisy_observation(CompoundModel const& model, RandomStream& rng);

/*!
 * zeta(T) from the interlaced construction.
 *
 * Jump times are order statistics of N(T) uniforms. Between jumps the
 * Brownian path advances by exact heat-kernel increments with variance
 * (sigma2 / T) dt over sub-intervals no longer than step.
 */
Rotation simulate_interlaced(CompoundModel const& model, double step, RandomStream& rng);

//! b_delta = exp(lambda T (a_delta - 1) - delta (delta + 1) sigma2 / 2).
ZonalSpectrum theoretical_spectrum(double lambda, double horizon, double sigma2,
                                   ZonalSpectrum const& jump_spectrum);
ZonalSpectrum theoretical_spectrum(CompoundModel const& model, ZonalSpectrum const& jump_spectrum);

//! Provenance recorded with an observation set.
struct ObservationMeta
{
    double lambda = 0;
    double horizon = 0;
    double sigma2 = 0;
    std::string jump_law;
    std::string generator = "noisy";
    std::uint64_t seed = 0;
};

struct ObservationSet
{
    std::vector<Rotation> samples;
    ObservationMeta meta;
};

enum class Generator
{
    compound,    //!< Y(T)
    noisy,       //!< M Y(T)
    interlaced,  //!< zeta(T)
};

std::string to_string(Generator g);
Generator generator_from_string(std::string const& s);

//! Samples per independently seeded block.
inline constexpr std::size_t kBlockSize = 4096;

/*!
 * n i.i.d. observations. Block b uses RandomStream::substream(seed, b), so
 * the output does not depend on the number of workers.
 */
ObservationSet generate_observations(CompoundModel const& model, std::size_t n,
                                     std::uint64_t seed, Generator generator = Generator::noisy,
                                     unsigned workers = 1, double interlace_step = 0.5);

}  // namespace so3dc
