// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace so3dc::stats {

/*!
 * One-sample Kolmogorov-Smirnov distance sup |F_n - F|.
 *
 * cdf is right-continuous; cdf_left gives F(x-) and defaults to cdf (no
 * atoms). Samples need not be sorted.
 */
double ks_one_sample(std::vector<double> samples, std::function<double(double)> const& cdf,
                     std::function<double(double)> const& cdf_left = {});

double ks_two_sample(std::vector<double> a, std::vector<double> b);

//! Asymptotic critical values c(alpha) / sqrt(n), c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_one_sample(std::size_t n, double alpha);
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

//! Pearson statistic sum (O - E)^2 / E over bins with E > 0.
double chi_square(std::span<double const> observed, std::span<double const> expected);
//! Upper alpha quantile of the chi-square law with df degrees of freedom.
double chi_square_critical(int df, double alpha);

double mean(std::span<double const> v);
double median(std::vector<double> v);
double stddev(std::span<double const> v);

}  // namespace so3dc::stats
