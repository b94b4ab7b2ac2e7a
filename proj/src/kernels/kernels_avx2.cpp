// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include <immintrin.h>

#include <vector>

#include "so3dc/kernels.hpp"

namespace so3dc::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

struct Acc
{
    __m256d v = _mm256_setzero_pd();
};

inline double hsum(__m256d v)
{
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void legendre_moments(double const* x, std::size_t n, int count, double* sums)
{
    if (count <= 0)
        return;
    std::vector<Acc> acc(count);
    __m256d const one = _mm256_set1_pd(1.0);
    std::size_t const full = n - n % kLanes;
    for (std::size_t m = 0; m < full; m += kLanes)
    {
        __m256d const xv = _mm256_loadu_pd(x + m);
        __m256d p0 = one;
        __m256d p1 = xv;
        if (count > 1)
            acc[1].v = _mm256_add_pd(acc[1].v, p1);
        for (int k = 2; k < count; ++k)
        {
            __m256d const a = _mm256_set1_pd((2.0 * k - 1.0) / k);
            __m256d const b = _mm256_set1_pd((k - 1.0) / k);
            __m256d p2 = _mm256_fmsub_pd(_mm256_mul_pd(a, xv), p1, _mm256_mul_pd(b, p0));
            acc[k].v = _mm256_add_pd(acc[k].v, p2);
            p0 = p1;
            p1 = p2;
        }
    }
    sums[0] += static_cast<double>(full);
    for (int k = 1; k < count; ++k)
        sums[k] += hsum(acc[k].v);
    scalar_table().legendre_moments(x + full, n - full, count, sums);
}

void character_moments(double const* cos_omega, std::size_t n, int count, double* sums)
{
    if (count <= 0)
        return;
    std::vector<Acc> acc(count);
    __m256d const one = _mm256_set1_pd(1.0);
    __m256d const two = _mm256_set1_pd(2.0);
    std::size_t const full = n - n % kLanes;
    for (std::size_t m = 0; m < full; m += kLanes)
    {
        __m256d const c = _mm256_loadu_pd(cos_omega + m);
        __m256d const two_c = _mm256_mul_pd(two, c);
        __m256d cheb0 = one;
        __m256d cheb1 = c;
        __m256d chi = one;
        if (count > 1)
        {
            chi = _mm256_fmadd_pd(two, cheb1, chi);
            acc[1].v = _mm256_add_pd(acc[1].v, chi);
        }
        for (int k = 2; k < count; ++k)
        {
            __m256d cheb2 = _mm256_fmsub_pd(two_c, cheb1, cheb0);
            chi = _mm256_fmadd_pd(two, cheb2, chi);
            acc[k].v = _mm256_add_pd(acc[k].v, chi);
            cheb0 = cheb1;
            cheb1 = cheb2;
        }
    }
    sums[0] += static_cast<double>(full);
    for (int k = 1; k < count; ++k)
        sums[k] += hsum(acc[k].v);
    scalar_table().character_moments(cos_omega + full, n - full, count, sums);
}

void legendre_series(double const* coeffs, int count, double const* x, std::size_t n,
                     double* out)
{
    if (count <= 0)
    {
        scalar_table().legendre_series(coeffs, count, x, n, out);
        return;
    }
    __m256d const one = _mm256_set1_pd(1.0);
    std::size_t const full = n - n % kLanes;
    for (std::size_t m = 0; m < full; m += kLanes)
    {
        __m256d const xv = _mm256_loadu_pd(x + m);
        __m256d p0 = one;
        __m256d p1 = xv;
        __m256d acc = _mm256_set1_pd(coeffs[0]);
        if (count > 1)
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[1]), p1, acc);
        for (int k = 2; k < count; ++k)
        {
            __m256d const a = _mm256_set1_pd((2.0 * k - 1.0) / k);
            __m256d const b = _mm256_set1_pd((k - 1.0) / k);
            __m256d p2 = _mm256_fmsub_pd(_mm256_mul_pd(a, xv), p1, _mm256_mul_pd(b, p0));
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[k]), p2, acc);
            p0 = p1;
            p1 = p2;
        }
        _mm256_storeu_pd(out + m, acc);
    }
    scalar_table().legendre_series(coeffs, count, x + full, n - full, out + full);
}

void character_series(double const* coeffs, int count, double const* cos_omega,
                      std::size_t n, double* out)
{
    if (count <= 0)
    {
        scalar_table().character_series(coeffs, count, cos_omega, n, out);
        return;
    }
    __m256d const one = _mm256_set1_pd(1.0);
    __m256d const two = _mm256_set1_pd(2.0);
    std::size_t const full = n - n % kLanes;
    for (std::size_t m = 0; m < full; m += kLanes)
    {
        __m256d const c = _mm256_loadu_pd(cos_omega + m);
        __m256d const two_c = _mm256_mul_pd(two, c);
        __m256d cheb0 = one;
        __m256d cheb1 = c;
        __m256d chi = one;
        __m256d acc = _mm256_set1_pd(coeffs[0]);
        if (count > 1)
        {
            chi = _mm256_fmadd_pd(two, cheb1, chi);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[1]), chi, acc);
        }
        for (int k = 2; k < count; ++k)
        {
            __m256d cheb2 = _mm256_fmsub_pd(two_c, cheb1, cheb0);
            chi = _mm256_fmadd_pd(two, cheb2, chi);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[k]), chi, acc);
            cheb0 = cheb1;
            cheb1 = cheb2;
        }
        _mm256_storeu_pd(out + m, acc);
    }
    scalar_table().character_series(coeffs, count, cos_omega + full, n - full, out + full);
}

}  // namespace

KernelTable const& avx2_table()
{
    static constexpr KernelTable t{
        &legendre_moments, &character_moments, &legendre_series, &character_series};
    return t;
}

}  // namespace so3dc::kernels::detail
