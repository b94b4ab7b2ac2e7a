// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include <numbers>

#include "so3dc/angle_density.hpp"
#include "so3dc/legendre.hpp"
#include "so3dc/quadrature.hpp"
#include "so3dc/scattering.hpp"
#include "so3dc/spectrum.hpp"
#include "so3dc/wigner.hpp"
#include "test_util.hpp"

using namespace so3dc;
using std::numbers::pi;

namespace {

// explicit Wigner sum, independent of the library recursion
double wigner_sum(int j, int mp, int m, double beta)
{
    auto lf = [](int n) { return std::lgamma(n + 1.0); };
    double s = 0;
    for (int k = 0; k <= 2 * j; ++k)
    {
        int const a1 = j + m - k;
        int const a2 = mp - m + k;
        int const a3 = j - mp - k;
        if (a1 < 0 || a2 < 0 || a3 < 0)
            continue;
        double const l = 0.5 * (lf(j + mp) + lf(j - mp) + lf(j + m) + lf(j - m)) - lf(a1) - lf(k) -
                         lf(a2) - lf(a3);
        s += (a2 % 2 ? -1.0 : 1.0) * std::exp(l) * std::pow(std::cos(beta / 2), 2 * j + m - mp - 2 * k) *
             std::pow(std::sin(beta / 2), mp - m + 2 * k);
    }
    return s;
}

}  // namespace

TEST_CASE("legendre_p")
{
    CHECK(legendre_p(0, 0.3) == 1.0);
    CHECK(legendre_p(2, 1.0) == doctest::Approx(1.0));
    CHECK(legendre_p(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-15));
    CHECK(legendre_p(4, -1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(legendre_p(2, 1.1), std::domain_error);
    std::vector<double> all(10);
    legendre_all(0.37, all);
    for (int d = 0; d < 10; ++d)
        CHECK(all[d] == doctest::Approx(legendre_p(d, 0.37)).epsilon(1e-14));
    CHECK(IrrepIndex{3}.dimension() == 7);
    CHECK(IrrepIndex{3}.laplace_eigenvalue() == 12.0);
}

TEST_CASE("character")
{
    for (int d = 0; d < 10; ++d)
        CHECK(character(d, 0.0) == doctest::Approx(2 * d + 1));
    CHECK(character(1, pi) == doctest::Approx(-1.0));
    for (int d = 0; d < 10; ++d)
    {
        double const w = 0.81;
        CHECK(character(d, w) == doctest::Approx(std::sin((d + 0.5) * w) / std::sin(w / 2)).epsilon(1e-12));
        CHECK(character(d, 1e-9) == doctest::Approx(2 * d + 1).epsilon(1e-12));
    }
}

TEST_CASE("wigner_d against explicit sum")
{
    for (double beta : {0.0, 0.3, 1.1, 2.0, pi - 1e-3, pi})
        for (int j = 0; j <= 12; ++j)
        {
            auto const d = wigner_d(j, beta);
            for (int a = -j; a <= j; ++a)
                for (int b = -j; b <= j; ++b)
                    CHECK(std::abs(d(a + j, b + j) - wigner_sum(j, a, b, beta)) < 1e-10);
        }
    // deeper cutoffs stay orthogonal
    auto const all = wigner_d_all(40, 1.3);
    for (int j : {20, 31, 40})
    {
        auto const& d = all[j];
        auto const p = d * transpose(d);
        double err = 0;
        for (int i = 0; i < d.dim(); ++i)
            for (int k = 0; k < d.dim(); ++k)
                err = std::max(err, std::abs(p(i, k) - (i == k ? 1.0 : 0.0)));
        CHECK(err < 1e-10);
        CHECK(d(j, j) == doctest::Approx(legendre_p(j, std::cos(1.3))).epsilon(1e-10));
    }
}

TEST_CASE("wigner special values")
{
    for (int j = 0; j < 8; ++j)
    {
        auto const d = wigner_d(j, 0.0);
        for (int a = 0; a < d.dim(); ++a)
            for (int b = 0; b < d.dim(); ++b)
                CHECK(d(a, b) == doctest::Approx(a == b ? 1.0 : 0.0));
    }
    for (double t : {0.2, 1.0, 2.5})
    {
        auto const d1 = wigner_d(1, t);
        double const c = std::cos(t);
        double const s = std::sin(t);
        double const r2 = std::sqrt(2.0);
        double const ref[3][3] = {{(1 + c) / 2, s / r2, (1 - c) / 2},
                                  {-s / r2, c, s / r2},
                                  {(1 - c) / 2, -s / r2, (1 + c) / 2}};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(d1(a, b) == doctest::Approx(ref[a][b]).epsilon(1e-14));
        for (int j = 0; j <= 31; ++j)
            CHECK(std::abs(wigner_d(j, t)(j, j) - legendre_p(j, c)) < 1e-10);
    }
}

TEST_CASE("delta = 1 irrep is the rotation in the spherical basis")
{
    // U^1 is similar to the 3x3 rotation matrix: equal traces and spectra
    RandomStream rng(10);
    for (int i = 0; i < 50; ++i)
    {
        auto const r = sample_haar(rng);
        auto const m = r.matrix();
        auto const u = irrep_matrix(1, r);
        CHECK(std::abs(trace(u) - Complex(m[0][0] + m[1][1] + m[2][2], 0)) < 1e-12);
    }
}

TEST_CASE("irrep_matrix: identity, trivial irrep, character, unitarity, homomorphism")
{
    for (int d = 0; d < 6; ++d)
        CHECK(testutil::max_abs_diff(irrep_matrix(d, Rotation{}), ComplexMatrix::identity(2 * d + 1)) <
              1e-14);
    RandomStream rng(11);
    for (int i = 0; i < 100; ++i)
    {
        auto const a = sample_haar(rng);
        auto const b = sample_haar(rng);
        auto const ua = irrep_matrices(15, a);
        auto const ub = irrep_matrices(15, b);
        auto const uab = irrep_matrices(15, compose(a, b));
        CHECK(std::abs(ua[0](0, 0) - Complex(1, 0)) < 1e-15);
        for (int d = 0; d <= 15; ++d)
        {
            auto const n = 2 * d + 1;
            CHECK(testutil::max_abs_diff(ua[d] * adjoint(ua[d]), ComplexMatrix::identity(n)) < 1e-9);
            CHECK(testutil::max_abs_diff(uab[d], ua[d] * ub[d]) < 1e-8);
            CHECK(std::abs(trace(ua[d]) - character(d, rotation_angle(a))) < 1e-8);
        }
        // class function
        auto const k = sample_haar(rng);
        auto const conj = compose(compose(k, a), inverse(k));
        for (int d = 0; d < 6; ++d)
            CHECK(std::abs(character(d, rotation_angle(conj)) - character(d, rotation_angle(a))) < 1e-9);
    }
}

namespace {

// product rule over (phi, theta, psi): exact trigonometric grid in the
// azimuths, Gauss-Legendre in cos(theta); weights sum to one
struct HaarGrid
{
    std::vector<Rotation> nodes;
    std::vector<double> weights;
    std::vector<double> theta;
};

HaarGrid haar_grid(int azimuths, int polar)
{
    HaarGrid g;
    auto const rule = gauss_legendre(polar);
    for (int i = 0; i < azimuths; ++i)
        for (int k = 0; k < polar; ++k)
            for (int j = 0; j < azimuths; ++j)
            {
                double const t = std::acos(rule.nodes[k]);
                g.nodes.push_back(from_euler_zyz({2 * pi * i / azimuths, t, 2 * pi * j / azimuths}));
                g.weights.push_back(rule.weights[k] / 2 / (azimuths * azimuths));
                g.theta.push_back(t);
            }
    return g;
}

}  // namespace

TEST_CASE("Peter-Weyl orthogonality by quadrature")
{
    int const dmax = 5;
    auto const grid = haar_grid(2 * dmax + 2, 2 * dmax + 2);
    std::vector<std::vector<ComplexMatrix>> u;
    for (auto const& r : grid.nodes)
        u.push_back(irrep_matrices(dmax, r));
    double worst = 0;
    for (int d1 = 0; d1 <= dmax; ++d1)
        for (int d2 = 0; d2 <= dmax; ++d2)
            for (int i = 0; i <= 2 * d1; ++i)
                for (int j = 0; j <= 2 * d1; ++j)
                    for (int k = 0; k <= 2 * d2; ++k)
                        for (int l = 0; l <= 2 * d2; ++l)
                        {
                            Complex s = 0;
                            for (std::size_t q = 0; q < grid.nodes.size(); ++q)
                                s += grid.weights[q] * u[q][d1](i, j) * std::conj(u[q][d2](k, l));
                            double const ref = (d1 == d2 && i == k && j == l) ? 1.0 / (2 * d1 + 1) : 0.0;
                            worst = std::max(worst, std::abs(s - ref));
                        }
    CHECK(worst < 1e-6);
}

TEST_CASE("zonal Fourier coefficient has a single nonzero entry")
{
    double const g = 0.5;
    int const dmax = 5;
    int const az = 2 * dmax + 2;
    auto const rule = gauss_legendre(48);
    std::vector<ComplexMatrix> acc;
    for (int d = 0; d <= dmax; ++d)
        acc.emplace_back(2 * d + 1);
    for (int i = 0; i < az; ++i)
        for (int j = 0; j < az; ++j)
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            {
                double const t = std::acos(rule.nodes[k]);
                double const w = rule.weights[k] * 0.5 * hg_density(g, t) / (az * az);
                auto const u = irrep_matrices(dmax, from_euler_zyz({2 * pi * i / az, t, 2 * pi * j / az}));
                for (int d = 0; d <= dmax; ++d)
                    acc[d] += Complex(w, 0) * u[d];
            }
    for (int d = 0; d <= dmax; ++d)
        for (int a = 0; a <= 2 * d; ++a)
            for (int b = 0; b <= 2 * d; ++b)
            {
                double const ref = (a == d && b == d) ? std::pow(g, d) : 0.0;
                CHECK(std::abs(acc[d](a, b) - ref) < 1e-8);
            }
}

TEST_CASE("legendre_coeff and series")
{
    auto const uni = AngleDensity::uniform();
    CHECK(legendre_coeff(uni, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int d = 1; d < 10; ++d)
        CHECK(std::abs(legendre_coeff(uni, d)) < 1e-12);
    for (double g : {0.85, 0.9, 0.95, 0.99})
    {
        auto const s = legendre_spectrum(hg_angle_density(g), 32);
        CHECK(std::abs(s[0] - 1) < 1e-10);
        for (int d = 0; d < 32; ++d)
            CHECK(std::abs(s[d] - std::pow(g, d)) < 1e-6);
    }

    ZonalSpectrum const one({1.0, 0, 0, 0});
    CHECK(legendre_series(one, 1.234) == doctest::Approx(1.0));

    // series of g^d converges to the closed form
    std::vector<double> a(400);
    for (int d = 0; d < 400; ++d)
        a[d] = std::pow(0.8, d);
    for (double t : {0.5, 1.5, 3.0})
        CHECK(legendre_series(ZonalSpectrum(a), t) == doctest::Approx(hg_density(0.8, t)).epsilon(1e-10));

    // round trip
    ZonalSpectrum const s({1.0, 0.3, -0.2, 0.1, 0.05, -0.01});
    auto const back = legendre_spectrum([&](double t) { return legendre_series(s, t); }, 6);
    for (int d = 0; d < 6; ++d)
        CHECK(std::abs(back[d] - s[d]) < 1e-8);

    std::vector<double> th{0.1, 0.7, 1.9, 3.0, 2.2};
    std::vector<double> out(th.size());
    legendre_series(s, th, out);
    for (std::size_t i = 0; i < th.size(); ++i)
        CHECK(out[i] == doctest::Approx(legendre_series(s, th[i])).epsilon(1e-13));
}

TEST_CASE("plancherel_norm_sq")
{
    CHECK(plancherel_norm_sq(ZonalSpectrum({0.0, 0.0})) == 0.0);
    CHECK(plancherel_norm_sq(ZonalSpectrum({0.0, 1.0})) == 3.0);
    ZonalSpectrum const s({1.0, 0.5, 0.25, -0.1});
    ThetaQuadrature const tq(64);
    double const quad = tq.integrate_zonal([&](double t) {
        double const v = legendre_series(s, t);
        return v * v;
    });
    CHECK(quad == doctest::Approx(plancherel_norm_sq(s)).epsilon(1e-10));
}

TEST_CASE("quadrature")
{
    auto const r = gauss_legendre(10);
    double s = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * std::pow(r.nodes[i], 18);
    CHECK(s == doctest::Approx(2.0 / 19).epsilon(1e-14));
    ThetaQuadrature const tq(32);
    CHECK(tq.integrate_zonal([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate_interval([](double x) { return x * x; }, 0, 3, r) == doctest::Approx(9.0));
}
