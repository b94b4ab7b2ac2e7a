// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace so3dc::stats {

double ks_one_sample(std::vector<double> samples, std::function<double(double)> const& cdf,
                     std::function<double(double)> const& cdf_left)
{
    if (samples.empty())
        throw std::invalid_argument("ks_one_sample: no samples");
    std::sort(samples.begin(), samples.end());
    auto const& left = cdf_left ? cdf_left : cdf;
    double const n = static_cast<double>(samples.size());
    double d = 0;
    std::size_t i = 0;
    while (i < samples.size())
    {
        std::size_t j = i;
        while (j + 1 < samples.size() && samples[j + 1] == samples[i])
            ++j;
        double const x = samples[i];
        d = std::max(d, std::abs((j + 1) / n - cdf(x)));
        d = std::max(d, std::abs(i / n - left(x)));
        i = j + 1;
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double const na = static_cast<double>(a.size());
    double const nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0;
    while (i < a.size() && j < b.size())
    {
        double const x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x)
            ++i;
        while (j < b.size() && b[j] == x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_critical_one_sample(std::size_t n, double alpha)
{
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha)
{
    double const dn = static_cast<double>(n);
    double const dm = static_cast<double>(m);
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) * std::sqrt((dn + dm) / (dn * dm));
}

double chi_square(std::span<double const> observed, std::span<double const> expected)
{
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi_square: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < observed.size(); ++i)
    {
        if (expected[i] <= 0)
            continue;
        double const r = observed[i] - expected[i];
        s += r * r / expected[i];
    }
    return s;
}

double chi_square_critical(int df, double alpha)
{
    boost::math::chi_squared dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

double mean(std::span<double const> v)
{
    if (v.empty())
        return 0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v)
{
    if (v.empty())
        throw std::invalid_argument("median: empty");
    std::sort(v.begin(), v.end());
    std::size_t const h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double stddev(std::span<double const> v)
{
    if (v.size() < 2)
        return 0;
    double const m = mean(v);
    double s = 0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace so3dc::stats
