// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/kernels.hpp"

namespace so3dc::kernels::detail {
namespace {

// P_k = a_k x P_{k-1} - b_k P_{k-2}, a_k = (2k-1)/k, b_k = (k-1)/k
inline double bonnet_a(int k) { return (2.0 * k - 1.0) / k; }
inline double bonnet_b(int k) { return (k - 1.0) / k; }

void legendre_moments(double const* x, std::size_t n, int count, double* sums)
{
    if (count <= 0)
        return;
    for (std::size_t m = 0; m < n; ++m)
    {
        double const xm = x[m];
        double p0 = 1.0;
        double p1 = xm;
        sums[0] += 1.0;
        if (count > 1)
            sums[1] += p1;
        for (int k = 2; k < count; ++k)
        {
            double p2 = bonnet_a(k) * xm * p1 - bonnet_b(k) * p0;
            sums[k] += p2;
            p0 = p1;
            p1 = p2;
        }
    }
}

void character_moments(double const* cos_omega, std::size_t n, int count, double* sums)
{
    if (count <= 0)
        return;
    for (std::size_t m = 0; m < n; ++m)
    {
        double const c = cos_omega[m];
        double cheb0 = 1.0;
        double cheb1 = c;
        double chi = 1.0;
        sums[0] += chi;
        if (count > 1)
        {
            chi += 2.0 * cheb1;
            sums[1] += chi;
        }
        for (int k = 2; k < count; ++k)
        {
            double cheb2 = 2.0 * c * cheb1 - cheb0;
            chi += 2.0 * cheb2;
            sums[k] += chi;
            cheb0 = cheb1;
            cheb1 = cheb2;
        }
    }
}

void legendre_series(double const* coeffs, int count, double const* x, std::size_t n,
                     double* out)
{
    for (std::size_t m = 0; m < n; ++m)
    {
        double const xm = x[m];
        if (count <= 0)
        {
            out[m] = 0;
            continue;
        }
        double p0 = 1.0;
        double p1 = xm;
        double acc = coeffs[0];
        if (count > 1)
            acc += coeffs[1] * p1;
        for (int k = 2; k < count; ++k)
        {
            double p2 = bonnet_a(k) * xm * p1 - bonnet_b(k) * p0;
            acc += coeffs[k] * p2;
            p0 = p1;
            p1 = p2;
        }
        out[m] = acc;
    }
}

void character_series(double const* coeffs, int count, double const* cos_omega,
                      std::size_t n, double* out)
{
    for (std::size_t m = 0; m < n; ++m)
    {
        double const c = cos_omega[m];
        if (count <= 0)
        {
            out[m] = 0;
            continue;
        }
        double cheb0 = 1.0;
        double cheb1 = c;
        double chi = 1.0;
        double acc = coeffs[0];
        if (count > 1)
        {
            chi += 2.0 * cheb1;
            acc += coeffs[1] * chi;
        }
        for (int k = 2; k < count; ++k)
        {
            double cheb2 = 2.0 * c * cheb1 - cheb0;
            chi += 2.0 * cheb2;
            acc += coeffs[k] * chi;
            cheb0 = cheb1;
            cheb1 = cheb2;
        }
        out[m] = acc;
    }
}

}  // namespace

KernelTable const& scalar_table()
{
    static constexpr KernelTable t{
        &legendre_moments, &character_moments, &legendre_series, &character_series};
    return t;
}

}  // namespace so3dc::kernels::detail
