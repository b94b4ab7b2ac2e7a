// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/processes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "so3dc/kernels.hpp"

namespace so3dc {

CompoundModel::CompoundModel(double lambda, double horizon, double sigma2, AngleDensity jump_law)
    : lambda_(lambda), horizon_(horizon), sigma2_(sigma2), jump_law_(std::move(jump_law))
{
    if (!(lambda > 0))
        throw std::invalid_argument("CompoundModel: lambda must be > 0");
    if (!(horizon >= 0))
        throw std::invalid_argument("CompoundModel: horizon must be >= 0");
    if (!(sigma2 >= 0))
        throw std::invalid_argument("CompoundModel: sigma2 must be >= 0");
}

std::uint64_t sample_poisson(double mean, RandomStream& rng)
{
    if (!(mean >= 0))
        throw std::invalid_argument("sample_poisson: mean must be >= 0");
    if (mean == 0)
        return 0;
    if (mean <= 30)
    {
        double const limit = std::exp(-mean);
        double prod = rng.uniform_open0();
        std::uint64_t k = 0;
        while (prod > limit)
        {
            prod *= rng.uniform_open0();
            ++k;
        }
        return k;
    }
    std::mt19937_64 engine(rng.next_u64());
    return std::poisson_distribution<std::uint64_t>(mean)(engine);
}

CompoundDraw simulate_compound_counted(CompoundModel const& model, RandomStream& rng)
{
    CompoundDraw draw;
    draw.jumps = sample_poisson(model.mean_jumps(), rng);
    for (std::uint64_t i = 0; i < draw.jumps; ++i)
        draw.value = compose(draw.value, sample_zonal(model.jump_law(), rng));
    return draw;
}

Rotation simulate_compound(CompoundModel const& model, RandomStream& rng)
{
    return simulate_compound_counted(model, rng).value;
}

//---------------------------------------------------------------------------//
// Heat kernel
//---------------------------------------------------------------------------//

double HeatKernelSampler::series_angle_density(double sigma2, double omega, int max_delta)
{
    std::vector<double> coeffs(max_delta + 1);
    for (int d = 0; d <= max_delta; ++d)
        coeffs[d] = (2.0 * d + 1.0) * std::exp(-0.5 * d * (d + 1.0) * sigma2);
    double const c = std::cos(omega);
    double k = 0;
    kernels::character_series(coeffs, std::span<double const>(&c, 1), std::span<double>(&k, 1));
    return k * (1.0 - c) / std::numbers::pi;
}

double HeatKernelSampler::image_angle_density(double sigma2, double omega)
{
    // sum over odd k of k exp(-a k^2) sin(k x), folded by Poisson summation,
    // with x = omega / 2 and a = sigma2 / 8
    double const a = sigma2 / 8.0;
    double const x = 0.5 * omega;
    double sum = 0;
    for (int j = -8; j <= 8; ++j)
    {
        double const u = x - std::numbers::pi * j;
        double const expo = u * u / (4.0 * a);
        if (expo > 745.0)
            continue;
        double const term = u / (2.0 * a) * std::exp(-expo);
        sum += (j % 2 == 0) ? term : -term;
    }
    double const pref = std::exp(sigma2 / 8.0) * 0.25 * std::sqrt(std::numbers::pi / a);
    return pref * sum * std::sin(x) * 2.0 / std::numbers::pi;
}

double HeatKernelSampler::angle_density(double omega) const
{
    if (sigma2_ < kImageThreshold)
        return image_angle_density(sigma2_, omega);
    return series_angle_density(sigma2_, omega, kSeriesMaxDelta);
}

HeatKernelSampler::HeatKernelSampler(double sigma2) : sigma2_(sigma2)
{
    if (!(sigma2 >= 0))
        throw std::invalid_argument("HeatKernelSampler: sigma2 must be >= 0");
    if (sigma2 == 0)
        return;
    // the angle is Maxwell-like with scale sigma for small sigma2
    omega_max_ = std::min(std::numbers::pi, 14.0 * std::sqrt(sigma2));
    int const n = kGridSize;
    double const h = omega_max_ / (n - 1);
    std::vector<double> dens(2 * n - 1);
    if (sigma2 < kImageThreshold)
    {
        for (int i = 0; i < 2 * n - 1; ++i)
            dens[i] = image_angle_density(sigma2, 0.5 * h * i);
    }
    else
    {
        std::vector<double> coeffs(kSeriesMaxDelta + 1);
        for (int d = 0; d <= kSeriesMaxDelta; ++d)
            coeffs[d] = (2.0 * d + 1.0) * std::exp(-0.5 * d * (d + 1.0) * sigma2);
        std::vector<double> cosines(2 * n - 1);
        for (int i = 0; i < 2 * n - 1; ++i)
            cosines[i] = std::cos(0.5 * h * i);
        kernels::character_series(coeffs, cosines, dens);
        for (int i = 0; i < 2 * n - 1; ++i)
        {
            double const haar = (1.0 - cosines[i]) / std::numbers::pi;
            if (dens[i] * haar < -1e-9)
                throw std::domain_error(
                    "HeatKernelSampler: truncated series negative, increase max delta");
            dens[i] = std::max(0.0, dens[i] * haar);
        }
    }
    cdf_.assign(n, 0.0);
    for (int i = 1; i < n; ++i)
    {
        double const simpson
            = h / 6.0 * (dens[2 * i - 2] + 4.0 * dens[2 * i - 1] + dens[2 * i]);
        cdf_[i] = cdf_[i - 1] + std::max(0.0, simpson);
    }
    double const total = cdf_.back();
    for (double& c : cdf_)
        c /= total;
}

Rotation HeatKernelSampler::sample(RandomStream& rng) const
{
    if (sigma2_ == 0)
        return Rotation{};
    double const u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t hi = std::clamp<std::size_t>(it - cdf_.begin(), 1, cdf_.size() - 1);
    std::size_t lo = hi - 1;
    double const h = omega_max_ / (cdf_.size() - 1);
    double const span = cdf_[hi] - cdf_[lo];
    double const frac = span > 0 ? (u - cdf_[lo]) / span : 0.5;
    double const omega = (lo + frac) * h;
    return Rotation::from_axis_angle(sample_unit_vector(rng), omega);
}

Rotation sample_heat_kernel(double sigma2, RandomStream& rng)
{
    if (sigma2 == 0)
        return Rotation{};
    return HeatKernelSampler(sigma2).sample(rng);
}

double heat_maxwell_ratio(double sigma2, double omega)
{
    // image terms j and -j paired so that nothing overflows or cancels at x -> 0
    double const a = sigma2 / 8.0;
    double const x = 0.5 * omega;
    double s = 1.0;
    for (int j = 1; j <= 4; ++j)
    {
        double const c = std::numbers::pi * j;
        double const ep = std::exp(-c * (c - 2.0 * x) / (4.0 * a));
        double const em = std::exp(-c * (c + 2.0 * x) / (4.0 * a));
        double const y = c * x / (2.0 * a);
        double shx = 0;  // (ep - em) / x
        if (y < 1.0)
            shx = 2.0 * std::exp(-c * c / (4.0 * a)) * c / (2.0 * a) * (y > 0 ? std::sinh(y) / y : 1.0);
        else
            shx = (ep - em) / x;
        double const pair = ep + em - c * shx;
        s += (j % 2 ? -pair : pair);
    }
    double const sinc = x > 0 ? std::sin(x) / x : 1.0;
    return sinc * s;
}

Rotation sample_heat_increment(double sigma2, RandomStream& rng)
{
    if (!(sigma2 >= 0))
        throw std::invalid_argument("sample_heat_increment: sigma2 must be >= 0");
    if (sigma2 == 0)
        return Rotation{};
    if (sigma2 > HeatKernelSampler::kImageThreshold)
        return HeatKernelSampler(sigma2).sample(rng);
    double const sigma = std::sqrt(sigma2);
    for (;;)
    {
        double const n1 = rng.normal();
        double const n2 = rng.normal();
        double const n3 = rng.normal();
        double const omega = sigma * std::sqrt(n1 * n1 + n2 * n2 + n3 * n3);
        double const u = rng.uniform();
        if (omega > std::numbers::pi)
            continue;
        if (u * kHeatMaxwellBound < heat_maxwell_ratio(sigma2, omega))
            return Rotation::from_axis_angle(sample_unit_vector(rng), omega);
    }
}

Rotation simulate_noisy_observation(CompoundModel const& model, HeatKernelSampler const& noise,
                                    RandomStream& rng)
{
    Rotation const m = noise.sample(rng);
    return compose(m, simulate_compound(model, rng));
}

Rotation simulate_noisy_observation(CompoundModel const& model, RandomStream& rng)
{
    return simulate_noisy_observation(model, HeatKernelSampler(model.sigma2()), rng);
}

Rotation simulate_interlaced(CompoundModel const& model, double step, RandomStream& rng)
{
    if (!(step > 0))
        throw std::invalid_argument("simulate_interlaced: step must be > 0");
    double const horizon = model.horizon();
    double const rate = horizon > 0 ? model.sigma2() / horizon : 0.0;
    std::uint64_t const n = sample_poisson(model.mean_jumps(), rng);
    std::vector<double> times(n);
    for (auto& t : times)
        t = horizon * rng.uniform();
    std::sort(times.begin(), times.end());
    times.push_back(horizon);

    Rotation zeta;
    double previous = 0;
    for (std::uint64_t i = 0; i <= n; ++i)
    {
        double const gap = times[i] - previous;
        previous = times[i];
        if (rate > 0 && gap > 0)
        {
            auto const pieces = static_cast<std::uint64_t>(std::max(1.0, std::ceil(gap / step)));
            double const variance = rate * gap / pieces;
            for (std::uint64_t k = 0; k < pieces; ++k)
                zeta = compose(zeta, sample_heat_increment(variance, rng));
        }
        if (i < n)
            zeta = compose(zeta, sample_zonal(model.jump_law(), rng));
    }
    return zeta;
}

ZonalSpectrum theoretical_spectrum(double lambda, double horizon, double sigma2,
                                   ZonalSpectrum const& jump_spectrum)
{
    ZonalSpectrum b(std::vector<double>(jump_spectrum.a.size()));
    for (int d = 0; d < jump_spectrum.cutoff(); ++d)
    {
        b[d] = std::exp(lambda * horizon * (jump_spectrum[d] - 1.0)
                        - 0.5 * d * (d + 1.0) * sigma2);
    }
    return b;
}

ZonalSpectrum theoretical_spectrum(CompoundModel const& model, ZonalSpectrum const& jump_spectrum)
{
    return theoretical_spectrum(model.lambda(), model.horizon(), model.sigma2(), jump_spectrum);
}

//---------------------------------------------------------------------------//
// Bulk generation
//---------------------------------------------------------------------------//

std::string to_string(Generator g)
{
    switch (g)
    {
        case Generator::compound:
            return "compound";
        case Generator::noisy:
            return "noisy";
        case Generator::interlaced:
            return "interlaced";
    }
    return "noisy";
}

Generator generator_from_string(std::string const& s)
{
    if (s == "compound")
        return Generator::compound;
    if (s == "noisy")
        return Generator::noisy;
    if (s == "interlaced")
        return Generator::interlaced;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

ObservationSet generate_observations(CompoundModel const& model, std::size_t n,
                                     std::uint64_t seed, Generator generator, unsigned workers,
                                     double interlace_step)
{
    ObservationSet out;
    out.meta.lambda = model.lambda();
    out.meta.horizon = model.horizon();
    out.meta.sigma2 = model.sigma2();
    out.meta.jump_law = model.jump_law().name();
    out.meta.generator = to_string(generator);
    out.meta.seed = seed;
    out.samples.resize(n);

    HeatKernelSampler const noise(generator == Generator::noisy ? model.sigma2() : 0.0);
    std::size_t const blocks = (n + kBlockSize - 1) / kBlockSize;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t b = next++; b < blocks; b = next++)
        {
            RandomStream rng = RandomStream::substream(seed, b);
            std::size_t const end = std::min(n, (b + 1) * kBlockSize);
            for (std::size_t i = b * kBlockSize; i < end; ++i)
            {
                switch (generator)
                {
                    case Generator::compound:
                        out.samples[i] = simulate_compound(model, rng);
                        break;
                    case Generator::noisy:
                        out.samples[i] = simulate_noisy_observation(model, noise, rng);
                        break;
                    case Generator::interlaced:
                        out.samples[i] = simulate_interlaced(model, interlace_step, rng);
                        break;
                }
            }
        }
    };
    unsigned const count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < count; ++w)
        threads.emplace_back(work);
    work();
    for (auto& t : threads)
        t.join();
    return out;
}

}  // namespace so3dc
