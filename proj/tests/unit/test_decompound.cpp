// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include <numbers>
#include <sstream>

#include "so3dc/decompound.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/hermitian.hpp"
#include "so3dc/legendre.hpp"
#include "so3dc/processes.hpp"
#include "so3dc/scattering.hpp"
#include "so3dc/wigner.hpp"
#include "test_util.hpp"

using namespace so3dc;
using std::numbers::pi;

namespace {

ZonalSpectrum powers(double g, int n)
{
    std::vector<double> a(n);
    for (int d = 0; d < n; ++d)
        a[d] = std::pow(g, d);
    return ZonalSpectrum(a);
}

EstimatorConfig default_cfg(double sigma2 = 0)
{
    EstimatorConfig c;
    c.lambda = 0.3;
    c.horizon = 10;
    c.sigma2 = sigma2;
    return c;
}

}  // namespace

TEST_CASE("config validation and modes")
{
    EstimatorConfig c;
    CHECK_NOTHROW(c.validate());
    c.cutoff = 0;
    CHECK_THROWS(c.validate());
    c = {};
    c.smoothing = -1;
    CHECK_THROWS(c.validate());
    c = {};
    c.prior_bounds = std::vector<double>{0.5, 1.5};
    CHECK_THROWS(c.validate());
    CHECK(estimator_mode_from_string("general-matrix") == EstimatorMode::general);
    CHECK(estimator_mode_from_string("zonal") == EstimatorMode::zonal);
    CHECK(estimator_mode_from_string(to_string(EstimatorMode::character)) == EstimatorMode::character);
    CHECK_THROWS(estimator_mode_from_string("fast"));
    auto const p = default_cfg(0.05);
    CHECK(p.lambda_bar(0) == 0.3);
    CHECK(p.lambda_bar(3) == doctest::Approx(0.3 + 12 * 0.05 / 20));
}

TEST_CASE("empirical characteristic functions")
{
    std::vector<Rotation> const ident(5);
    auto const m = empirical_char(ident, 3);
    CHECK(testutil::max_abs_diff(m, ComplexMatrix::identity(7)) < 1e-15);
    CHECK(empirical_char_zonal(ident, 4) == doctest::Approx(1.0));
    CHECK(empirical_char_character(ident, 4) == doctest::Approx(1.0));

    RandomStream rng(1);
    auto const r = sample_haar(rng);
    std::vector<Rotation> const pair{r, inverse(r)};
    for (int d = 1; d < 5; ++d)
    {
        auto const u = irrep_matrix(d, r);
        auto const ref = Complex(0.25, 0) * (u + adjoint(u) + adjoint(u) + u);
        auto const got = empirical_char(pair, d);
        CHECK(testutil::max_abs_diff(got, ref) < 1e-12);
        CHECK(hermitian_defect(got) < 1e-15);
    }

    auto const haar = testutil::haar_samples(100000, 2);
    auto const chars = empirical_chars(haar, 4);
    for (int d = 1; d <= 4; ++d)
    {
        double worst = 0;
        for (int i = 0; i <= 2 * d; ++i)
            for (int j = 0; j <= 2 * d; ++j)
                worst = std::max(worst, std::abs(chars[d](i, j)));
        CHECK(worst < 5.0 * (2 * d + 1) / std::sqrt(1e5));
        CHECK(std::abs(empirical_char_zonal(haar, d)) < 5 / std::sqrt(1e5));
    }
}

TEST_CASE("zonal and character statistics are entries of the empirical char")
{
    RandomStream rng(3);
    auto const model = CompoundModel(0.3, 10, 0.05, hg_angle_density(0.9));
    auto const obs = generate_observations(model, 2000, 4).samples;
    auto const chars = empirical_chars(obs, 8);
    auto const zonal = empirical_spectrum_zonal(obs, 9);
    auto const ch = empirical_spectrum_character(obs, 9);
    for (int d = 0; d <= 8; ++d)
    {
        CHECK(std::abs(zonal[d] - chars[d](d, d).real()) < 1e-12);
        CHECK(std::abs(ch[d] - trace(chars[d]).real() / (2 * d + 1)) < 1e-12);
        CHECK(operator_norm_hermitian(chars[d]) <= 1 + 1e-12);
    }
    // symmetry preservation: off-diagonal entries are small for zonal jumps
    auto const big = generate_observations(CompoundModel(0.3, 10, 0, hg_angle_density(0.9)), 50000, 5);
    auto const c3 = empirical_char(big.samples, 3);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (i != j)
                CHECK(std::abs(c3(i, j)) < 5 / std::sqrt(5e4));
}

TEST_CASE("gates")
{
    CHECK(psd_gate(ComplexMatrix::identity(3)));
    CHECK_FALSE(psd_gate(ComplexMatrix(3)));
    ComplexMatrix m(2);
    m(0, 0) = 1;
    m(1, 1) = -0.1;
    CHECK_FALSE(psd_gate(m));
    CHECK(psd_gate(0.5));
    CHECK_FALSE(psd_gate(0.0));
    CHECK_FALSE(psd_gate(1e-13));
}

TEST_CASE("invert_compounding scalar and matrix")
{
    auto const cfg = default_cfg();
    double const a = 0.37;
    CHECK(*invert_compounding(std::exp(3 * (a - 1)), cfg, 2) == doctest::Approx(a).epsilon(1e-14));
    CHECK_FALSE(invert_compounding(-0.1, cfg, 2).has_value());

    for (double g : {0.85, 0.9, 0.95, 0.99})
        for (double s2 : {0.0, 0.05})
        {
            auto const c = default_cfg(s2);
            auto const b = theoretical_spectrum(0.3, 10, s2, powers(g, 31));
            for (int d = 0; d < 31; ++d)
            {
                CHECK(std::abs(*invert_compounding(b[d], c, d) - std::pow(g, d)) < 1e-10);
                // block-structured matrix input: diag(e^{-lambda_bar T}, ..., b, ...)
                ComplexMatrix phi(2 * d + 1);
                for (int i = 0; i <= 2 * d; ++i)
                    phi(i, i) = std::exp(-c.lambda_bar(d) * c.horizon);
                phi(d, d) = b[d];
                auto const x = invert_compounding(phi, c, d);
                REQUIRE(x.has_value());
                CHECK(std::abs((*x)(d, d).real() - std::pow(g, d)) < 1e-10);
                for (int i = 0; i <= 2 * d; ++i)
                    if (i != d)
                        CHECK(std::abs((*x)(i, i)) < 1e-10);
            }
            auto const est = decompound_spectrum(b, c);
            for (int d = 0; d < 31; ++d)
                CHECK(std::abs(est.a_hat[d] - std::pow(g, d)) < 1e-10);
        }
}

TEST_CASE("decompound degenerate and Monte-Carlo data")
{
    std::vector<Rotation> const ident(10);
    for (auto mode : {EstimatorMode::zonal, EstimatorMode::character, EstimatorMode::general})
    {
        auto cfg = default_cfg();
        cfg.mode = mode;
        cfg.cutoff = 6;
        auto const est = decompound(ident, cfg);
        CHECK(est.gates_failed() == 0);
        for (int d = 0; d < 6; ++d)
            CHECK(est.a_hat[d] == doctest::Approx(1.0).epsilon(1e-12));
    }

    auto const model = CompoundModel(0.3, 10, 0, hg_angle_density(0.9));
    auto const obs = generate_observations(model, 50000, 6).samples;
    auto cfg = default_cfg();
    auto const z = decompound(obs, cfg);
    for (int d = 0; d <= 5; ++d)
        CHECK(std::abs(z.a_hat[d] - std::pow(0.9, d)) < 0.03);

    // general mode: estimates Hermitian, (0,0) entry close to the zonal answer
    cfg.mode = EstimatorMode::general;
    cfg.cutoff = 8;
    auto const sub = std::span<Rotation const>(obs).first(5000);
    auto const gm = decompound(sub, cfg);
    auto zc = cfg;
    zc.mode = EstimatorMode::zonal;
    auto const zm = decompound(sub, zc);
    for (int d = 0; d < 8; ++d)
    {
        CHECK(gm.gate_passed[d]);
        CHECK(hermitian_defect(gm.matrices[d]) < 1e-12);
        CHECK(std::abs(gm.a_hat[d] - zm.a_hat[d]) < 0.05);
    }
}

TEST_CASE("prior-informed gates")
{
    auto const model = CompoundModel(0.3, 10, 0, hg_angle_density(0.9));
    auto const obs = generate_observations(model, 20000, 7).samples;
    auto cfg = default_cfg();
    cfg.cutoff = 10;
    auto const b = theoretical_spectrum(0.3, 10, 0, powers(0.9, 10));
    cfg.prior_bounds = std::vector<double>(b.a.begin(), b.a.end());
    auto const plain = decompound(obs, cfg);
    auto const prior = decompound_with_prior(obs, cfg);
    for (int d = 0; d < 10; ++d)
    {
        CHECK(prior.gate_passed[d]);
        CHECK(prior.a_hat[d] == plain.a_hat[d]);
    }
    // dispersed data: uniform jumps put b_d near exp(-3)
    auto const wide = generate_observations(CompoundModel(0.3, 10, 0, AngleDensity::uniform()), 20000, 8).samples;
    cfg.prior_bounds = std::vector<double>(10, 0.99);
    cfg.prior_bounds->at(0) = 1.0;
    auto const strict = decompound_with_prior(wide, cfg);
    for (int d = 1; d < 10; ++d)
    {
        CHECK_FALSE(strict.gate_passed[d]);
        CHECK(strict.a_hat[d] == 0.0);
    }
    cfg.prior_bounds = std::vector<double>(3, 0.5);
    CHECK_THROWS(decompound_with_prior(obs, cfg));

    // gate failure frequency falls with n
    auto pc = default_cfg();
    pc.cutoff = 31;
    auto const bt = theoretical_spectrum(0.3, 10, 0, powers(0.9, 31));
    pc.prior_bounds = std::vector<double>(bt.a.begin(), bt.a.end());
    int fail_small = 0;
    int fail_large = 0;
    for (int r = 0; r < 200; ++r)
    {
        fail_small += decompound_with_prior(generate_observations(model, 200, 1000 + r).samples, pc).gates_failed();
        fail_large += decompound_with_prior(generate_observations(model, 5000, 5000 + r).samples, pc).gates_failed();
    }
    CHECK(fail_large < fail_small);
}

TEST_CASE("smoothing weights")
{
    auto cfg = default_cfg();
    cfg.cutoff = 6;
    auto const f = smoothing_weights(cfg);
    for (int d = 0; d < 6; ++d)
        CHECK(f[d] == 2 * d + 1);
    CHECK(f[3] == 7.0);
    cfg.smoothing = 0.01;
    auto const s = smoothing_weights(cfg);
    for (int d = 1; d < 6; ++d)
        CHECK(s[d] / (2 * d + 1) < s[d - 1] / (2 * d - 1));
}

TEST_CASE("reconstruction")
{
    auto cfg = default_cfg();
    cfg.cutoff = 31;
    ParametricEstimate flat;
    flat.a_hat.assign(31, 0.0);
    flat.a_hat[0] = 1;
    flat.gate_passed.assign(31, true);
    auto const p0 = reconstruct_density(flat, cfg);
    for (double t : {0.0, 1.0, 3.0})
        CHECK(p0.profile(t) == doctest::Approx(1.0));

    double const g = 0.85;
    auto const b = theoretical_spectrum(0.3, 10, 0, powers(g, 31));
    auto const est = decompound_spectrum(b, cfg);
    auto const dens = reconstruct_density(est, cfg);
    double const tail = std::pow(g, 31) * 63 * 2 / (1 - g);
    for (double t : {0.8, 1.5, 2.5, 3.0})
        CHECK(std::abs(dens.profile(t) - hg_density(g, t)) < tail);
    RandomStream rng(8);
    auto const r = sample_haar(rng);
    CHECK(dens(r) == doctest::Approx(dens.profile(std::acos(r.cos_euler_theta()))).epsilon(1e-12));

    // smoothed target term by term
    cfg.smoothing = 0.005;
    auto const smooth = reconstruct_density(est, cfg);
    auto const coef = smooth.coefficients();
    for (int d = 0; d < 31; ++d)
        CHECK(coef[d] == doctest::Approx(std::exp(-0.005 * d * (d + 1)) * std::pow(g, d)).epsilon(1e-10));
    double manual = 0;
    for (int d = 0; d < 31; ++d)
        manual += (2 * d + 1) * coef[d] * legendre_p(d, std::cos(0.4));
    CHECK(smooth.profile(0.4) == doctest::Approx(manual).epsilon(1e-12));

    // general mode profile agrees with zonal on exact block data
    EstimatorConfig gc = default_cfg();
    gc.cutoff = 6;
    ParametricEstimate ge;
    ge.mode = EstimatorMode::general;
    for (int d = 0; d < 6; ++d)
    {
        ComplexMatrix m(2 * d + 1);
        m(d, d) = std::pow(g, d);
        ge.matrices.push_back(m);
        ge.a_hat.push_back(std::pow(g, d));
        ge.gate_passed.push_back(true);
    }
    auto ze = ge;
    ze.mode = EstimatorMode::zonal;
    auto const gd = reconstruct_density(ge, gc);
    auto const zd = reconstruct_density(ze, gc);
    for (double t : {0.2, 1.0, 2.9})
        CHECK(gd.profile(t) == doctest::Approx(zd.profile(t)).epsilon(1e-10));
}

TEST_CASE("error decomposition")
{
    auto cfg = default_cfg();
    cfg.cutoff = 31;
    double const g = 0.9;
    auto const truth = powers(g, 31);
    auto const b = theoretical_spectrum(0.3, 10, 0, truth);
    auto const est = decompound_spectrum(b, cfg);
    auto const e = error_decomposition(est, truth, cfg, g);
    CHECK(e.parametric < 1e-18);
    CHECK(e.total == e.parametric + e.truncation);
    double tail = 0;
    for (int d = 31; d < 5000; ++d)
        tail += (2 * d + 1) * std::pow(g, 2 * d);
    CHECK(e.truncation == doctest::Approx(tail).epsilon(1e-10));
    CHECK(weighted_geometric_tail(0.5, 0) == doctest::Approx(1 / 0.5 + 2 * 0.5 / 0.25));

    auto noisy = est;
    noisy.a_hat[3] += 0.1;
    auto const e2 = error_decomposition(noisy, powers(g, 200), cfg);
    CHECK(e2.parametric == doctest::Approx(7 * 0.01));
    CHECK(e2.total == e2.parametric + e2.truncation);
}

TEST_CASE("csv round trips")
{
    auto cfg = default_cfg();
    cfg.cutoff = 5;
    auto const truth = powers(0.9, 5);
    auto est = decompound_spectrum(theoretical_spectrum(0.3, 10, 0, truth), cfg);
    est.gate_passed[4] = false;
    est.a_hat[4] = 0;
    std::stringstream ss;
    write_estimate(ss, est, &truth);
    auto const t = read_estimate(ss);
    REQUIRE(t.a_hat.size() == 5);
    for (int d = 0; d < 5; ++d)
    {
        CHECK(t.a_hat[d] == est.a_hat[d]);
        CHECK(t.gate_passed[d] == est.gate_passed[d]);
        CHECK(t.a_true[d] == truth[d]);
    }

    std::stringstream rs;
    write_reconstruction(rs, reconstruct_density(est, cfg), [](double th) { return hg_density(0.9, th); });
    auto const rt = read_reconstruction(rs);
    REQUIRE(rt.theta.size() == kReconstructionGrid);
    CHECK(rt.theta.front() == 0.0);
    CHECK(rt.theta.back() == pi);
    CHECK(rt.p_true.size() == rt.theta.size());

    std::stringstream bad("delta,a_hat,gate_passed\n0,1,1\n1,oops,1\n");
    try
    {
        read_estimate(bad);
        FAIL("expected IoError");
    }
    catch (IoError const& e)
    {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}
