// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace so3dc {

//! Irreducible representation label of SO(3).
struct IrrepIndex
{
    int delta = 0;

    constexpr int dimension() const { return 2 * delta + 1; }
    //! Casimir (Laplace-Beltrami) eigenvalue delta (delta + 1).
    constexpr double laplace_eigenvalue() const
    {
        return static_cast<double>(delta) * (delta + 1);
    }
};

//! Legendre polynomial P_delta(x) by Bonnet's recursion; |x| <= 1.
double legendre_p(int delta, double x);

//! P_0(x) .. P_{out.size()-1}(x).
void legendre_all(double x, std::span<double> out);

//! Character of the spin-delta representation at rotation angle omega.
double character(int delta, double omega);

}  // namespace so3dc
