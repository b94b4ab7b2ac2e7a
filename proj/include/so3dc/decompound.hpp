// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "so3dc/matrix.hpp"
#include "so3dc/rotation.hpp"
#include "so3dc/spectrum.hpp"

namespace so3dc {

/*!
 * How the characteristic function of the observations is estimated.
 *
 * - general: full Hermitian (2d+1)x(2d+1) matrices, any inverse-invariant law
 * - zonal: the (0,0) entry only, i.e. the mean of P_d(cos theta_Euler); exact
 *   for jump laws that depend on the Euler angle theta alone
 * - character: normalized character chi_d / (2d+1); exact for
 *   conjugate-invariant laws, where phi(d) = a_d I
 */
enum class EstimatorMode
{
    general,
    zonal,
    character,
};

std::string to_string(EstimatorMode mode);
EstimatorMode estimator_mode_from_string(std::string const& s);

struct EstimatorConfig
{
    int cutoff = kDefaultCutoff;  //!< estimates for delta = 0 .. cutoff-1
    double smoothing = 0;         //!< K in f_d = (2d+1) exp(-K d(d+1))
    EstimatorMode mode = EstimatorMode::zonal;
    std::optional<std::vector<double>> prior_bounds;  //!< k_d in (0, 1]
    double lambda = 0.3;
    double horizon = 10;
    double sigma2 = 0;

    //! Throws std::invalid_argument on a violated invariant.
    void validate() const;
    //! lambda + d(d+1) sigma2 / (2 T): the noise-corrected jump rate.
    double lambda_bar(int delta) const;
};

inline constexpr double kGateTolerance = 1e-12;
inline constexpr double kPriorUpperSlack = 1e-9;

struct ParametricEstimate
{
    EstimatorMode mode = EstimatorMode::zonal;
    //! Scalar Legendre coefficient per delta; in general mode the (0,0)
    //! entry of the matrix estimate.
    std::vector<double> a_hat;
    std::vector<bool> gate_passed;
    //! General mode only: Hermitian estimates of phi_X(delta).
    std::vector<ComplexMatrix> matrices;
    //! Empirical characteristic value fed to the inversion (scalar modes;
    //! (0,0) entry in general mode).
    std::vector<double> phi_z;

    int cutoff() const { return static_cast<int>(a_hat.size()); }
    ZonalSpectrum spectrum() const { return ZonalSpectrum(a_hat); }
    int gates_failed() const;
};

//! (1/2n) sum (U(Z_m) + U(Z_m)^dagger).
ComplexMatrix empirical_char(std::span<Rotation const> obs, int delta);
//! Empirical characteristic matrices for delta = 0 .. max_delta.
std::vector<ComplexMatrix> empirical_chars(std::span<Rotation const> obs, int max_delta);

//! Mean of P_delta(cos theta_Euler(Z_m)): the (0,0) entry of empirical_char.
double empirical_char_zonal(std::span<Rotation const> obs, int delta);
ZonalSpectrum empirical_spectrum_zonal(std::span<Rotation const> obs, int cutoff);

//! Mean of chi_delta(omega_m) / (2 delta + 1): normalized trace of empirical_char.
double empirical_char_character(std::span<Rotation const> obs, int delta);
ZonalSpectrum empirical_spectrum_character(std::span<Rotation const> obs, int cutoff);

//! Event that every eigenvalue exceeds kGateTolerance.
bool psd_gate(ComplexMatrix const& m);
bool psd_gate(double value);
//! Event that the spectrum lies in [lower, upper].
bool spectrum_within(ComplexMatrix const& m, double lower, double upper);

/*!
 * (1/(T lambda)) Log(phi_Z) + (lambda_bar / lambda) I.
 *
 * Returns nullopt when the positive-definiteness gate fails.
 */
std::optional<ComplexMatrix> invert_compounding(ComplexMatrix const& phi_z,
                                                EstimatorConfig const& cfg, int delta);
std::optional<double> invert_compounding(double phi_z, EstimatorConfig const& cfg, int delta);

//! Gated characteristic-function estimator; zero estimate where a gate fails.
ParametricEstimate decompound(std::span<Rotation const> obs, EstimatorConfig const& cfg);
//! Same, with gates requiring the spectrum in [k_d / 2, 1 + 1e-9].
ParametricEstimate decompound_with_prior(std::span<Rotation const> obs,
                                         EstimatorConfig const& cfg);
//! Scalar-mode estimator applied to a given characteristic spectrum.
ParametricEstimate decompound_spectrum(ZonalSpectrum const& phi_z, EstimatorConfig const& cfg);

//! f_d = (2d+1) exp(-K d(d+1)), d = 0 .. cutoff-1.
std::vector<double> smoothing_weights(EstimatorConfig const& cfg);

/*!
 * Nonparametric density estimate
 * 1 + sum_{1 <= d < l} f_d Re tr(phi_X(d) U^d(g)^dagger).
 */
class DensityEstimate
{
  public:
    DensityEstimate(ParametricEstimate estimate, EstimatorConfig const& cfg);

    //! Value at a rotation.
    double operator()(Rotation const& g) const;
    //! Profile along the Euler angle theta (phi = psi = 0); rotation angle
    //! omega in character mode.
    double profile(double angle) const;
    void profile(std::span<double const> angles, std::span<double> out) const;

    //! Weighted scalar coefficients e^{-K d(d+1)} a_d with gate failures zeroed.
    ZonalSpectrum coefficients() const;
    EstimatorMode mode() const { return estimate_.mode; }

  private:
    ParametricEstimate estimate_;
    std::vector<double> weights_;
};

DensityEstimate reconstruct_density(ParametricEstimate const& est, EstimatorConfig const& cfg);

struct ErrorDecomposition
{
    double total = 0;
    double parametric = 0;  //!< ||p_hat - p_l||^2
    double truncation = 0;  //!< ||p_l - p||^2
};

/*!
 * Plancherel split of the squared L2 error against a known jump spectrum.
 *
 * With hg_g set, K = 0 and a non-character mode, the truncation tail uses
 * the closed form of sum_{d >= l} (2d+1) g^{2d}; otherwise it sums the
 * supplied truth entries at d >= l.
 */
ErrorDecomposition error_decomposition(ParametricEstimate const& est, ZonalSpectrum const& truth,
                                       EstimatorConfig const& cfg,
                                       std::optional<double> hg_g = std::nullopt);

//! sum_{d >= l} (2d + 1) x^d in closed form.
double weighted_geometric_tail(double x, int from);

// CSV: delta,a_hat,gate_passed[,a_true]
void write_estimate(std::ostream& os, ParametricEstimate const& est,
                    ZonalSpectrum const* truth = nullptr);
struct EstimateTable
{
    std::vector<double> a_hat;
    std::vector<bool> gate_passed;
    std::vector<double> a_true;  //!< empty when absent
};
EstimateTable read_estimate(std::istream& is);

// CSV: theta,p_hat[,p_true] on a uniform grid
inline constexpr int kReconstructionGrid = 512;
std::vector<double> reconstruction_grid(int points = kReconstructionGrid);
void write_reconstruction(std::ostream& os, DensityEstimate const& density,
                          AngleDensity::Pdf const& truth = {});
struct ReconstructionTable
{
    std::vector<double> theta;
    std::vector<double> p_hat;
    std::vector<double> p_true;
};
ReconstructionTable read_reconstruction(std::istream& is);

}  // namespace so3dc
