// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "so3dc/decompound.hpp"
#include "so3dc/processes.hpp"

namespace so3dc {

/*!
 * Everything a run needs. Text form:
 *
 *   [model]      lambda, horizon, sigma2, g
 *   [estimator]  cutoff, smoothing, mode, prior_bounds (comma list)
 *   [run]        n, seed, replications, output_dir, workers, generator,
 *                interlace_step, input, quick
 *   [scatter]    thickness, mean_free_path, curve_points
 *   [figures]    g_values, n_values
 *
 * Blank lines and lines starting with '#' or ';' are ignored.
 */
struct ExperimentConfig
{
    double lambda = 0.3;
    double horizon = 10;
    double sigma2 = 0;
    double g = 0.9;

    int cutoff = kDefaultCutoff;
    double smoothing = 0;
    EstimatorMode mode = EstimatorMode::zonal;
    std::optional<std::vector<double>> prior_bounds;

    std::size_t n = 50000;
    std::uint64_t seed = 20110601;
    int replications = 1;
    std::filesystem::path output_dir = "so3dc_out";
    unsigned workers = 1;
    Generator generator = Generator::noisy;
    double interlace_step = 0.5;
    std::filesystem::path input;  // observations for decompound; empty = simulate
    bool quick = false;

    double thickness = 3;
    double mean_free_path = 1;
    int curve_points = 512;

    std::vector<double> g_values{0.85, 0.9, 0.95, 0.99};
    std::vector<std::size_t> n_values{500, 5000, 50000};

    //! Throws ConfigError.
    void validate() const;

    EstimatorConfig estimator() const;
    CompoundModel model() const;
    //! Seed of replication r; r = 0 is the configured seed.
    std::uint64_t replication_seed(int r) const;
};

//! Throws ConfigError with "origin:line: ..." messages.
ExperimentConfig parse_config(std::istream& is, std::string const& origin = "<config>");
//! Throws IoError if unreadable, ConfigError if invalid.
ExperimentConfig load_config(std::filesystem::path const& path);

//! Writes a config that parse_config reads back to an equal value.
void write_config(std::ostream& os, ExperimentConfig const& cfg);

}  // namespace so3dc
