// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "so3dc/legendre.hpp"

namespace so3dc {
namespace {

double log_factorial(int n)
{
    return std::lgamma(n + 1.0);
}

// d^j_{mp,m} at j = max(|mp|, |m|), where the Wigner sum has one term.
double wigner_d_seed(int j, int mp, int m, double cos_half, double sin_half)
{
    int const s_lo = std::max(0, m - mp);
    int const s_hi = std::min(j + m, j - mp);
    double sum = 0;
    for (int s = s_lo; s <= s_hi; ++s)
    {
        double const log_mag = 0.5
                                   * (log_factorial(j + mp) + log_factorial(j - mp)
                                      + log_factorial(j + m) + log_factorial(j - m))
                               - log_factorial(j + m - s) - log_factorial(s)
                               - log_factorial(mp - m + s) - log_factorial(j - mp - s);
        int const pc = 2 * j + m - mp - 2 * s;
        int const ps = mp - m + 2 * s;
        double const sign = ((mp - m + s) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_mag) * std::pow(cos_half, pc) * std::pow(sin_half, ps);
    }
    return sum;
}

}  // namespace

std::vector<RealMatrix> wigner_d_all(int max_delta, double theta)
{
    if (max_delta < 0)
        throw std::invalid_argument("wigner_d_all: negative degree");
    std::vector<RealMatrix> d;
    d.reserve(max_delta + 1);
    for (int j = 0; j <= max_delta; ++j)
        d.emplace_back(2 * j + 1);

    double const x = std::cos(theta);
    double const ch = std::cos(0.5 * theta);
    double const sh = std::sin(0.5 * theta);

    std::vector<double> legendre(max_delta + 1);
    legendre_all(std::clamp(x, -1.0, 1.0), legendre);
    for (int j = 0; j <= max_delta; ++j)
        d[j](j, j) = legendre[j];

    for (int mp = -max_delta; mp <= max_delta; ++mp)
    {
        for (int m = -max_delta; m <= max_delta; ++m)
        {
            if (mp == 0 && m == 0)
                continue;
            int const j0 = std::max(std::abs(mp), std::abs(m));
            double prev2 = 0;
            double prev1 = wigner_d_seed(j0, mp, m, ch, sh);
            d[j0](mp + j0, m + j0) = prev1;
            double const mm = static_cast<double>(m) * m;
            double const mpmp = static_cast<double>(mp) * mp;
            for (int j = j0 + 1; j <= max_delta; ++j)
            {
                double const jd = j;
                double const jm1 = j - 1.0;
                double const lead = jd * (2 * jd - 1) / std::sqrt((jd * jd - mm) * (jd * jd - mpmp));
                double const back = std::sqrt((jm1 * jm1 - mm) * (jm1 * jm1 - mpmp))
                                    / (jm1 * (2 * jd - 1));
                double const cur
                    = lead * ((x - static_cast<double>(m) * mp / (jd * jm1)) * prev1 - back * prev2);
                d[j](mp + j, m + j) = cur;
                prev2 = prev1;
                prev1 = cur;
            }
        }
    }
    return d;
}

RealMatrix wigner_d(int delta, double theta)
{
    return std::move(wigner_d_all(delta, theta).back());
}

std::vector<ComplexMatrix> irrep_matrices(int max_delta, Rotation const& r)
{
    EulerZYZ const e = to_euler_zyz(r);
    std::vector<RealMatrix> const d = wigner_d_all(max_delta, e.theta);
    std::vector<ComplexMatrix> u;
    u.reserve(max_delta + 1);
    for (int j = 0; j <= max_delta; ++j)
    {
        ComplexMatrix m(2 * j + 1);
        for (int a = -j; a <= j; ++a)
        {
            Complex const left = std::polar(1.0, -a * e.phi);
            for (int b = -j; b <= j; ++b)
                m(a + j, b + j) = left * d[j](a + j, b + j) * std::polar(1.0, -b * e.psi);
        }
        u.push_back(std::move(m));
    }
    return u;
}

ComplexMatrix irrep_matrix(int delta, Rotation const& r)
{
    return std::move(irrep_matrices(delta, r).back());
}

}  // namespace so3dc
