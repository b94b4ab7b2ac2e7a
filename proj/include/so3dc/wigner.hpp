// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "so3dc/matrix.hpp"
#include "so3dc/rotation.hpp"

namespace so3dc {

/*!
 * Wigner small-d matrices d^delta(theta) for delta = 0..max_delta.
 *
 * Entry (a + delta, b + delta) holds d^delta_{ab}. Computed by the
 * three-term recursion in delta for each (a, b) pair, seeded with the
 * single-term closed form at delta = max(|a|, |b|).
 */
std::vector<RealMatrix> wigner_d_all(int max_delta, double theta);

RealMatrix wigner_d(int delta, double theta);

//! Unitary representation matrix U^delta(r) from ZYZ Euler angles.
ComplexMatrix irrep_matrix(int delta, Rotation const& r);

//! U^0(r) .. U^max_delta(r), sharing one Wigner recursion.
std::vector<ComplexMatrix> irrep_matrices(int max_delta, Rotation const& r);

}  // namespace so3dc
