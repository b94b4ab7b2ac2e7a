// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "so3dc/matrix.hpp"

namespace so3dc {

//! Eigenvalues in nondecreasing order with matching unitary eigenvectors.
struct HermitianEigen
{
    std::vector<double> values;
    ComplexMatrix vectors;  //!< columns are eigenvectors
};

/*!
 * Cyclic Jacobi eigensolver for Hermitian matrices.
 *
 * Only the Hermitian part of the input is used. Sweeps continue until the
 * off-diagonal Frobenius mass drops below 1e-15 of the total norm.
 */
HermitianEigen eigen_hermitian(ComplexMatrix const& m);

//! V f(Lambda) V^dagger for a real function of the eigenvalues.
template<class F>
ComplexMatrix apply_spectral(HermitianEigen const& eig, F&& f)
{
    int const n = static_cast<int>(eig.values.size());
    ComplexMatrix r(n);
    for (int k = 0; k < n; ++k)
    {
        double const fk = f(eig.values[k]);
        for (int i = 0; i < n; ++i)
        {
            Complex const vik = eig.vectors(i, k) * fk;
            for (int j = 0; j < n; ++j)
                r(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return r;
}

//! Unique Hermitian logarithm of a Hermitian positive-definite matrix.
ComplexMatrix matrix_log_hpd(ComplexMatrix const& m);
//! Matrix exponential of a Hermitian matrix.
ComplexMatrix matrix_exp_hermitian(ComplexMatrix const& m);

double min_eigenvalue(ComplexMatrix const& m);
//! Operator (spectral) norm of a Hermitian matrix.
double operator_norm_hermitian(ComplexMatrix const& m);
//! max |m_ij - conj(m_ji)|.
double hermitian_defect(ComplexMatrix const& m);

}  // namespace so3dc
