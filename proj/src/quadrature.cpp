// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace so3dc {

GaussLegendreRule gauss_legendre(int order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_legendre: order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    int const half = (order + 1) / 2;
    // P_n(x) and P_n'(x) by the three-term recursion
    auto evaluate = [order](double x, double& dp) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k)
        {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        return p1;
    };
    for (int i = 0; i < half; ++i)
    {
        // Tricomi initial guess, then Newton
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double dx = evaluate(x, dp) / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        evaluate(x, dp);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1)
        rule.nodes[order / 2] = 0.0;
    return rule;
}

double integrate_interval(std::function<double(double)> const& f, double a, double b,
                          GaussLegendreRule const& rule)
{
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

ThetaQuadrature::ThetaQuadrature(int order, int halvings)
{
    GaussLegendreRule const rule = gauss_legendre(order);
    auto add_panel = [&](double a, double b) {
        double const mid = 0.5 * (a + b);
        double const half = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            theta.push_back(mid + half * rule.nodes[i]);
            weight.push_back(half * rule.weights[i]);
        }
    };
    double upper = std::numbers::pi;
    for (int k = 0; k < halvings; ++k)
    {
        add_panel(0.5 * upper, upper);
        upper *= 0.5;
    }
    add_panel(0.0, upper);
}

double ThetaQuadrature::integrate(std::function<double(double)> const& f) const
{
    double sum = 0;
    for (std::size_t i = 0; i < theta.size(); ++i)
        sum += weight[i] * f(theta[i]);
    return sum;
}

double ThetaQuadrature::integrate_zonal(std::function<double(double)> const& f) const
{
    double sum = 0;
    for (std::size_t i = 0; i < theta.size(); ++i)
        sum += weight[i] * f(theta[i]) * std::sin(theta[i]);
    return 0.5 * sum;
}

}  // namespace so3dc
