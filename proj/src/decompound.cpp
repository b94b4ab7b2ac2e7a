// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/decompound.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "so3dc/csv.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/hermitian.hpp"
#include "so3dc/kernels.hpp"
#include "so3dc/legendre.hpp"
#include "so3dc/wigner.hpp"

namespace so3dc {

std::string to_string(EstimatorMode mode)
{
    switch (mode)
    {
        case EstimatorMode::general:
            return "general";
        case EstimatorMode::zonal:
            return "zonal";
        case EstimatorMode::character:
            return "character";
    }
    return "zonal";
}

EstimatorMode estimator_mode_from_string(std::string const& s)
{
    if (s == "general" || s == "general-matrix")
        return EstimatorMode::general;
    if (s == "zonal" || s == "zonal-scalar")
        return EstimatorMode::zonal;
    if (s == "character")
        return EstimatorMode::character;
    throw std::invalid_argument("unknown estimator mode '" + s + "'");
}

void EstimatorConfig::validate() const
{
    if (cutoff < 1)
        throw std::invalid_argument("estimator: cutoff must be >= 1");
    if (!(smoothing >= 0))
        throw std::invalid_argument("estimator: smoothing K must be >= 0");
    if (!(lambda > 0))
        throw std::invalid_argument("estimator: lambda must be > 0");
    if (!(horizon > 0))
        throw std::invalid_argument("estimator: horizon must be > 0");
    if (!(sigma2 >= 0))
        throw std::invalid_argument("estimator: sigma2 must be >= 0");
    if (prior_bounds)
    {
        for (double k : *prior_bounds)
            if (!(k > 0 && k <= 1))
                throw std::invalid_argument("estimator: prior bounds must lie in (0, 1]");
    }
}

double EstimatorConfig::lambda_bar(int delta) const
{
    return lambda + 0.5 * delta * (delta + 1.0) * sigma2 / horizon;
}

int ParametricEstimate::gates_failed() const
{
    int n = 0;
    for (bool g : gate_passed)
        n += g ? 0 : 1;
    return n;
}

//---------------------------------------------------------------------------//
// Empirical characteristic functions
//---------------------------------------------------------------------------//

std::vector<ComplexMatrix> empirical_chars(std::span<Rotation const> obs, int max_delta)
{
    if (obs.empty())
        throw std::invalid_argument("empirical_char: empty observation set");
    std::vector<ComplexMatrix> acc;
    for (int d = 0; d <= max_delta; ++d)
        acc.emplace_back(2 * d + 1);
    for (auto const& z : obs)
    {
        auto const u = irrep_matrices(max_delta, z);
        for (int d = 0; d <= max_delta; ++d)
            acc[d] += u[d];
    }
    double const scale = 1.0 / static_cast<double>(obs.size());
    for (auto& m : acc)
        m = hermitian_part(scale * m);
    return acc;
}

ComplexMatrix empirical_char(std::span<Rotation const> obs, int delta)
{
    return std::move(empirical_chars(obs, delta).back());
}

ZonalSpectrum empirical_spectrum_zonal(std::span<Rotation const> obs, int cutoff)
{
    if (obs.empty())
        throw std::invalid_argument("empirical_char_zonal: empty observation set");
    std::vector<double> x(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        x[i] = obs[i].cos_euler_theta();
    std::vector<double> sums(cutoff, 0.0);
    kernels::legendre_moments(x, sums);
    for (double& s : sums)
        s /= static_cast<double>(obs.size());
    return ZonalSpectrum(std::move(sums));
}

double empirical_char_zonal(std::span<Rotation const> obs, int delta)
{
    return empirical_spectrum_zonal(obs, delta + 1)[delta];
}

ZonalSpectrum empirical_spectrum_character(std::span<Rotation const> obs, int cutoff)
{
    if (obs.empty())
        throw std::invalid_argument("empirical_char_character: empty observation set");
    std::vector<double> c(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        c[i] = obs[i].cos_rotation_angle();
    std::vector<double> sums(cutoff, 0.0);
    kernels::character_moments(c, sums);
    for (int d = 0; d < cutoff; ++d)
        sums[d] /= static_cast<double>(obs.size()) * (2.0 * d + 1.0);
    return ZonalSpectrum(std::move(sums));
}

double empirical_char_character(std::span<Rotation const> obs, int delta)
{
    return empirical_spectrum_character(obs, delta + 1)[delta];
}

//---------------------------------------------------------------------------//
// Gates and inversion
//---------------------------------------------------------------------------//

bool psd_gate(ComplexMatrix const& m)
{
    return min_eigenvalue(m) > kGateTolerance;
}

bool psd_gate(double value)
{
    return value > kGateTolerance;
}

bool spectrum_within(ComplexMatrix const& m, double lower, double upper)
{
    auto const v = eigen_hermitian(m).values;
    return v.front() >= lower && v.back() <= upper;
}

std::optional<ComplexMatrix> invert_compounding(ComplexMatrix const& phi_z,
                                                EstimatorConfig const& cfg, int delta)
{
    HermitianEigen const eig = eigen_hermitian(phi_z);
    if (!(eig.values.front() > kGateTolerance))
        return std::nullopt;
    double const scale = 1.0 / (cfg.horizon * cfg.lambda);
    double const shift = cfg.lambda_bar(delta) / cfg.lambda;
    return apply_spectral(eig, [&](double x) { return scale * std::log(x) + shift; });
}

std::optional<double> invert_compounding(double phi_z, EstimatorConfig const& cfg, int delta)
{
    if (!psd_gate(phi_z))
        return std::nullopt;
    return std::log(phi_z) / (cfg.horizon * cfg.lambda) + cfg.lambda_bar(delta) / cfg.lambda;
}

namespace {

struct Gate
{
    bool use_prior = false;
    std::vector<double> const* bounds = nullptr;

    bool scalar(double v, int delta) const
    {
        if (!use_prior)
            return psd_gate(v);
        return v >= 0.5 * (*bounds)[delta] && v <= 1.0 + kPriorUpperSlack;
    }
    bool matrix(ComplexMatrix const& m, int delta) const
    {
        if (!use_prior)
            return psd_gate(m);
        return spectrum_within(m, 0.5 * (*bounds)[delta], 1.0 + kPriorUpperSlack);
    }
};

ParametricEstimate estimate_scalar(ZonalSpectrum const& phi_z, EstimatorConfig const& cfg,
                                   Gate const& gate)
{
    ParametricEstimate est;
    est.mode = cfg.mode;
    est.phi_z = phi_z.a;
    for (int d = 0; d < cfg.cutoff; ++d)
    {
        bool const pass = gate.scalar(phi_z[d], d);
        auto const a = pass ? invert_compounding(phi_z[d], cfg, d) : std::nullopt;
        est.gate_passed.push_back(a.has_value());
        est.a_hat.push_back(a.value_or(0.0));
    }
    return est;
}

ParametricEstimate estimate(std::span<Rotation const> obs, EstimatorConfig const& cfg,
                            Gate const& gate)
{
    cfg.validate();
    switch (cfg.mode)
    {
        case EstimatorMode::zonal:
            return estimate_scalar(empirical_spectrum_zonal(obs, cfg.cutoff), cfg, gate);
        case EstimatorMode::character:
            return estimate_scalar(empirical_spectrum_character(obs, cfg.cutoff), cfg, gate);
        case EstimatorMode::general:
            break;
    }
    ParametricEstimate est;
    est.mode = EstimatorMode::general;
    auto const phi = empirical_chars(obs, cfg.cutoff - 1);
    for (int d = 0; d < cfg.cutoff; ++d)
    {
        est.phi_z.push_back(phi[d](d, d).real());
        std::optional<ComplexMatrix> x;
        if (gate.matrix(phi[d], d))
            x = invert_compounding(phi[d], cfg, d);
        est.gate_passed.push_back(x.has_value());
        ComplexMatrix m = x ? hermitian_part(*x) : ComplexMatrix(2 * d + 1);
        est.a_hat.push_back(m(d, d).real());
        est.matrices.push_back(std::move(m));
    }
    return est;
}

}  // namespace

ParametricEstimate decompound(std::span<Rotation const> obs, EstimatorConfig const& cfg)
{
    return estimate(obs, cfg, Gate{});
}

ParametricEstimate decompound_with_prior(std::span<Rotation const> obs,
                                         EstimatorConfig const& cfg)
{
    if (!cfg.prior_bounds)
        throw std::invalid_argument("decompound_with_prior: prior bounds missing");
    if (static_cast<int>(cfg.prior_bounds->size()) < cfg.cutoff)
        throw std::invalid_argument("decompound_with_prior: need one prior bound per delta");
    return estimate(obs, cfg, Gate{true, &*cfg.prior_bounds});
}

ParametricEstimate decompound_spectrum(ZonalSpectrum const& phi_z, EstimatorConfig const& cfg)
{
    cfg.validate();
    if (cfg.mode == EstimatorMode::general)
        throw std::invalid_argument("decompound_spectrum: scalar modes only");
    if (phi_z.cutoff() < cfg.cutoff)
        throw std::invalid_argument("decompound_spectrum: spectrum shorter than cutoff");
    ZonalSpectrum head(std::vector<double>(phi_z.a.begin(), phi_z.a.begin() + cfg.cutoff));
    if (cfg.prior_bounds)
        return estimate_scalar(head, cfg, Gate{true, &*cfg.prior_bounds});
    return estimate_scalar(head, cfg, Gate{});
}

std::vector<double> smoothing_weights(EstimatorConfig const& cfg)
{
    std::vector<double> f(cfg.cutoff);
    for (int d = 0; d < cfg.cutoff; ++d)
        f[d] = (2.0 * d + 1.0) * std::exp(-cfg.smoothing * d * (d + 1.0));
    return f;
}

//---------------------------------------------------------------------------//
// Reconstruction
//---------------------------------------------------------------------------//

DensityEstimate::DensityEstimate(ParametricEstimate estimate, EstimatorConfig const& cfg)
    : estimate_(std::move(estimate))
{
    EstimatorConfig c = cfg;
    c.cutoff = estimate_.cutoff();
    weights_ = smoothing_weights(c);
}

ZonalSpectrum DensityEstimate::coefficients() const
{
    ZonalSpectrum s(std::vector<double>(estimate_.a_hat.size(), 0.0));
    if (s.a.empty())
        return s;
    s[0] = 1.0;
    for (int d = 1; d < s.cutoff(); ++d)
    {
        if (estimate_.gate_passed[d])
            s[d] = weights_[d] / (2.0 * d + 1.0) * estimate_.a_hat[d];
    }
    return s;
}

double DensityEstimate::operator()(Rotation const& g) const
{
    switch (estimate_.mode)
    {
        case EstimatorMode::zonal:
            return profile(std::acos(std::clamp(g.cos_euler_theta(), -1.0, 1.0)));
        case EstimatorMode::character:
            return profile(rotation_angle(g));
        case EstimatorMode::general:
            break;
    }
    int const cutoff = estimate_.cutoff();
    if (cutoff <= 1)
        return 1.0;
    auto const u = irrep_matrices(cutoff - 1, g);
    double value = 1.0;
    for (int d = 1; d < cutoff; ++d)
    {
        if (!estimate_.gate_passed[d])
            continue;
        // Re tr(A U^dagger) = Re sum_ij A_ij conj(U_ij)
        Complex t{};
        auto const& a = estimate_.matrices[d];
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j)
                t += a(i, j) * std::conj(u[d](i, j));
        value += weights_[d] * t.real();
    }
    return value;
}

void DensityEstimate::profile(std::span<double const> angles, std::span<double> out) const
{
    if (estimate_.mode == EstimatorMode::general)
    {
        for (std::size_t i = 0; i < angles.size(); ++i)
            out[i] = (*this)(from_euler_zyz({0.0, angles[i], 0.0}));
        return;
    }
    ZonalSpectrum const c = coefficients();
    std::vector<double> x(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
        x[i] = std::cos(angles[i]);
    if (estimate_.mode == EstimatorMode::zonal)
    {
        std::vector<double> weighted(c.a.size());
        for (std::size_t d = 0; d < weighted.size(); ++d)
            weighted[d] = (2.0 * d + 1.0) * c.a[d];
        kernels::legendre_series(weighted, x, out);
    }
    else
    {
        // class function: sum (2d+1) a_d chi_d(omega)
        std::vector<double> weighted(c.a.size());
        for (std::size_t d = 0; d < weighted.size(); ++d)
            weighted[d] = (2.0 * d + 1.0) * c.a[d];
        kernels::character_series(weighted, x, out);
    }
}

double DensityEstimate::profile(double angle) const
{
    double out = 0;
    profile(std::span<double const>(&angle, 1), std::span<double>(&out, 1));
    return out;
}

DensityEstimate reconstruct_density(ParametricEstimate const& est, EstimatorConfig const& cfg)
{
    return DensityEstimate(est, cfg);
}

//---------------------------------------------------------------------------//
// Error decomposition
//---------------------------------------------------------------------------//

double weighted_geometric_tail(double x, int from)
{
    if (!(x >= 0 && x < 1))
        throw std::invalid_argument("weighted_geometric_tail: need 0 <= x < 1");
    double const l = from;
    return std::pow(x, l) * ((2 * l + 1) / (1 - x) + 2 * x / ((1 - x) * (1 - x)));
}

ErrorDecomposition error_decomposition(ParametricEstimate const& est, ZonalSpectrum const& truth,
                                       EstimatorConfig const& cfg, std::optional<double> hg_g)
{
    int const cutoff = est.cutoff();
    if (truth.cutoff() < cutoff)
        throw std::invalid_argument("error_decomposition: truth shorter than estimate");
    bool const character = est.mode == EstimatorMode::character;
    auto damp = [&cfg](int d) { return std::exp(-2.0 * cfg.smoothing * d * (d + 1.0)); };
    auto dim_weight = [character](int d) {
        double const dim = 2.0 * d + 1.0;
        return character ? dim * dim : dim;
    };

    ErrorDecomposition e;
    for (int d = 1; d < cutoff; ++d)
    {
        double sq = 0;
        if (est.mode == EstimatorMode::general)
        {
            // ||phi_hat - a E_00||_F^2
            ComplexMatrix diff = est.gate_passed[d] ? est.matrices[d] : ComplexMatrix(2 * d + 1);
            diff(d, d) -= truth[d];
            sq = frobenius_norm(diff);
            sq *= sq;
            e.parametric += (2.0 * d + 1.0) * damp(d) * sq;
            continue;
        }
        double const a = est.gate_passed[d] ? est.a_hat[d] : 0.0;
        sq = (a - truth[d]) * (a - truth[d]);
        e.parametric += dim_weight(d) * damp(d) * sq;
    }
    if (hg_g && cfg.smoothing == 0 && !character)
    {
        e.truncation = weighted_geometric_tail((*hg_g) * (*hg_g), cutoff);
    }
    else
    {
        for (int d = cutoff; d < truth.cutoff(); ++d)
            e.truncation += dim_weight(d) * damp(d) * truth[d] * truth[d];
    }
    e.total = e.parametric + e.truncation;
    return e;
}

//---------------------------------------------------------------------------//
// CSV
//---------------------------------------------------------------------------//

void write_estimate(std::ostream& os, ParametricEstimate const& est, ZonalSpectrum const* truth)
{
    os << "delta,a_hat,gate_passed";
    if (truth)
        os << ",a_true";
    os << '\n';
    for (int d = 0; d < est.cutoff(); ++d)
    {
        os << d << ',' << csv::format_double(est.a_hat[d]) << ',' << (est.gate_passed[d] ? 1 : 0);
        if (truth)
            os << ',' << csv::format_double(d < truth->cutoff() ? (*truth)[d] : 0.0);
        os << '\n';
    }
}

EstimateTable read_estimate(std::istream& is)
{
    EstimateTable t;
    std::string line;
    std::size_t lineno = 0;
    bool with_truth = false;
    bool header = false;
    while (std::getline(is, line))
    {
        ++lineno;
        auto const view = csv::trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto const f = csv::split(view);
        if (!header)
        {
            if (f.size() < 3 || f[0] != "delta" || f[1] != "a_hat" || f[2] != "gate_passed")
                throw IoError("estimate line " + std::to_string(lineno) + ": bad header");
            with_truth = f.size() == 4 && f[3] == "a_true";
            header = true;
            continue;
        }
        if (f.size() != (with_truth ? 4u : 3u))
            throw IoError("estimate line " + std::to_string(lineno) + ": wrong field count");
        try
        {
            if (static_cast<std::size_t>(csv::parse_double(f[0])) != t.a_hat.size())
                throw std::invalid_argument("delta out of sequence");
            t.a_hat.push_back(csv::parse_double(f[1]));
            t.gate_passed.push_back(csv::parse_double(f[2]) != 0);
            if (with_truth)
                t.a_true.push_back(csv::parse_double(f[3]));
        }
        catch (std::exception const& e)
        {
            throw IoError("estimate line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!header)
        throw IoError("estimate: missing header");
    return t;
}

std::vector<double> reconstruction_grid(int points)
{
    std::vector<double> theta(points);
    for (int i = 0; i < points; ++i)
        theta[i] = std::numbers::pi * i / (points - 1);
    return theta;
}

void write_reconstruction(std::ostream& os, DensityEstimate const& density,
                          AngleDensity::Pdf const& truth)
{
    auto const theta = reconstruction_grid();
    std::vector<double> p(theta.size());
    density.profile(theta, p);
    os << "theta,p_hat";
    if (truth)
        os << ",p_true";
    os << '\n';
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        os << csv::format_double(theta[i]) << ',' << csv::format_double(p[i]);
        if (truth)
            os << ',' << csv::format_double(truth(theta[i]));
        os << '\n';
    }
}

ReconstructionTable read_reconstruction(std::istream& is)
{
    ReconstructionTable t;
    std::string line;
    std::size_t lineno = 0;
    bool with_truth = false;
    bool header = false;
    while (std::getline(is, line))
    {
        ++lineno;
        auto const view = csv::trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto const f = csv::split(view);
        if (!header)
        {
            if (f.size() < 2 || f[0] != "theta" || f[1] != "p_hat")
                throw IoError("reconstruction line " + std::to_string(lineno) + ": bad header");
            with_truth = f.size() == 3 && f[2] == "p_true";
            header = true;
            continue;
        }
        if (f.size() != (with_truth ? 3u : 2u))
            throw IoError("reconstruction line " + std::to_string(lineno)
                          + ": wrong field count");
        try
        {
            t.theta.push_back(csv::parse_double(f[0]));
            t.p_hat.push_back(csv::parse_double(f[1]));
            if (with_truth)
                t.p_true.push_back(csv::parse_double(f[2]));
        }
        catch (std::exception const& e)
        {
            throw IoError("reconstruction line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!header)
        throw IoError("reconstruction: missing header");
    return t;
}

}  // namespace so3dc
