// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace so3dc::kernels {

/*!
 * Data-parallel inner loops of the estimator.
 *
 * Every kernel has a scalar reference implementation and, on x86-64, an
 * AVX2+FMA variant. The variant is picked once at runtime from CPU features
 * (override with SO3DC_ISA=scalar|avx2 or set_isa()). Variants agree to
 * rounding, not bitwise; results are reproducible for a fixed ISA.
 */
enum class Isa
{
    scalar,
    avx2,
};

struct KernelTable
{
    //! sums[d] += sum_m P_d(x[m]), d < count.
    void (*legendre_moments)(double const* x, std::size_t n, int count, double* sums);
    //! sums[d] += sum_m chi_d(omega_m) given cos(omega_m), d < count.
    void (*character_moments)(double const* cos_omega, std::size_t n, int count, double* sums);
    //! out[m] = sum_d coeffs[d] P_d(x[m]).
    void (*legendre_series)(double const* coeffs, int count, double const* x, std::size_t n,
                            double* out);
    //! out[m] = sum_d coeffs[d] chi_d(omega_m) given cos(omega_m).
    void (*character_series)(double const* coeffs, int count, double const* cos_omega,
                             std::size_t n, double* out);
};

bool isa_supported(Isa isa);
KernelTable const& table(Isa isa);
Isa active_isa();
//! Throws if the ISA is not available in this build or on this CPU.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

// Convenience wrappers over the active table.
void legendre_moments(std::span<double const> x, std::span<double> sums);
void character_moments(std::span<double const> cos_omega, std::span<double> sums);
void legendre_series(std::span<double const> coeffs, std::span<double const> x,
                     std::span<double> out);
void character_series(std::span<double const> coeffs, std::span<double const> cos_omega,
                      std::span<double> out);

namespace detail {
KernelTable const& scalar_table();
#ifdef SO3DC_HAVE_AVX2
KernelTable const& avx2_table();
#endif
}  // namespace detail

}  // namespace so3dc::kernels
