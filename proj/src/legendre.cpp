// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace so3dc {
namespace {

double checked_argument(double x)
{
    if (!(std::abs(x) <= 1.0 + 1e-12))
        throw std::domain_error("legendre_p: argument outside [-1, 1]");
    return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double legendre_p(int delta, double x)
{
    if (delta < 0)
        throw std::invalid_argument("legendre_p: negative degree");
    x = checked_argument(x);
    if (delta == 0)
        return 1.0;
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= delta; ++k)
    {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

void legendre_all(double x, std::span<double> out)
{
    x = checked_argument(x);
    if (out.empty())
        return;
    out[0] = 1.0;
    if (out.size() > 1)
        out[1] = x;
    for (std::size_t k = 2; k < out.size(); ++k)
        out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

double character(int delta, double omega)
{
    double const half = 0.5 * omega;
    if (std::abs(omega) < 1e-7)
    {
        // sin((2d+1)h)/sin(h) = (2d+1)(1 - ((2d+1)^2 - 1) h^2 / 6) + O(h^4)
        double const n = 2.0 * delta + 1.0;
        return n * (1.0 - (n * n - 1.0) * half * half / 6.0);
    }
    return std::sin((delta + 0.5) * omega) / std::sin(half);
}

}  // namespace so3dc
