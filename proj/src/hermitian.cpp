// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace so3dc {
namespace {

double off_diagonal_sq(ComplexMatrix const& a)
{
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return s;
}

}  // namespace

HermitianEigen eigen_hermitian(ComplexMatrix const& m)
{
    int const n = m.dim();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);
    double const total = std::max(frobenius_norm(a), 1e-300);
    double const stop = 1e-15 * total;

    for (int sweep = 0; sweep < 100; ++sweep)
    {
        if (std::sqrt(off_diagonal_sq(a)) <= stop)
            break;
        for (int p = 0; p < n - 1; ++p)
        {
            for (int q = p + 1; q < n; ++q)
            {
                double const mag = std::abs(a(p, q));
                if (mag <= 1e-300)
                    continue;
                Complex const phase = a(p, q) / mag;
                double const app = a(p, p).real();
                double const aqq = a(q, q).real();
                double const tau = (aqq - app) / (2.0 * mag);
                double const t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                double const c = 1.0 / std::hypot(1.0, t);
                double const s = t * c;
                // G = [[c, s e^{ia}], [-s e^{-ia}, c]] on (p, q); A <- G^dagger A G
                Complex const gpq = s * phase;
                Complex const gqp = -s * std::conj(phase);
                for (int k = 0; k < n; ++k)
                {
                    Complex const akp = a(k, p);
                    Complex const akq = a(k, q);
                    a(k, p) = akp * c + akq * gqp;
                    a(k, q) = akp * gpq + akq * c;
                }
                for (int k = 0; k < n; ++k)
                {
                    Complex const apk = a(p, k);
                    Complex const aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (int k = 0; k < n; ++k)
                {
                    Complex const vkp = v(k, p);
                    Complex const vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * c;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k)
    {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i)
            out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix matrix_log_hpd(ComplexMatrix const& m)
{
    HermitianEigen const eig = eigen_hermitian(m);
    if (eig.values.empty() || !(eig.values.front() > 0))
        throw std::domain_error("matrix_log_hpd: matrix is not positive definite");
    return apply_spectral(eig, [](double x) { return std::log(x); });
}

ComplexMatrix matrix_exp_hermitian(ComplexMatrix const& m)
{
    return apply_spectral(eigen_hermitian(m), [](double x) { return std::exp(x); });
}

double min_eigenvalue(ComplexMatrix const& m)
{
    return eigen_hermitian(m).values.front();
}

double operator_norm_hermitian(ComplexMatrix const& m)
{
    auto const v = eigen_hermitian(m).values;
    return std::max(std::abs(v.front()), std::abs(v.back()));
}

double hermitian_defect(ComplexMatrix const& m)
{
    double d = 0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

}  // namespace so3dc
