// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "so3dc/kernels.hpp"

namespace so3dc::kernels {
namespace {

bool cpu_has_avx2()
{
#if defined(SO3DC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect()
{
    if (char const* env = std::getenv("SO3DC_ISA"))
    {
        std::string const want(env);
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2())
            return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool isa_supported(Isa isa)
{
    return isa == Isa::scalar || cpu_has_avx2();
}

KernelTable const& table(Isa isa)
{
    switch (isa)
    {
        case Isa::scalar:
            return detail::scalar_table();
        case Isa::avx2:
#ifdef SO3DC_HAVE_AVX2
            if (cpu_has_avx2())
                return detail::avx2_table();
#endif
            break;
    }
    throw std::runtime_error("kernels: ISA not available");
}

Isa active_isa()
{
    return active().load(std::memory_order_relaxed);
}

void set_isa(Isa isa)
{
    if (!isa_supported(isa))
        throw std::runtime_error("kernels: ISA not available");
    active().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa)
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

void legendre_moments(std::span<double const> x, std::span<double> sums)
{
    table(active_isa()).legendre_moments(x.data(), x.size(), static_cast<int>(sums.size()),
                                         sums.data());
}

void character_moments(std::span<double const> cos_omega, std::span<double> sums)
{
    table(active_isa()).character_moments(cos_omega.data(), cos_omega.size(),
                                           static_cast<int>(sums.size()), sums.data());
}

void legendre_series(std::span<double const> coeffs, std::span<double const> x,
                     std::span<double> out)
{
    if (out.size() != x.size())
        throw std::invalid_argument("legendre_series: output size mismatch");
    table(active_isa()).legendre_series(coeffs.data(), static_cast<int>(coeffs.size()),
                                        x.data(), x.size(), out.data());
}

void character_series(std::span<double const> coeffs, std::span<double const> cos_omega,
                      std::span<double> out)
{
    if (out.size() != cos_omega.size())
        throw std::invalid_argument("character_series: output size mismatch");
    table(active_isa()).character_series(coeffs.data(), static_cast<int>(coeffs.size()),
                                         cos_omega.data(), cos_omega.size(), out.data());
}

}  // namespace so3dc::kernels
