// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "so3dc/config.hpp"

namespace so3dc {

struct RunReport
{
    std::vector<std::filesystem::path> files;  //!< every file written, in order
    std::string summary;                       //!< one human-readable line per item
};

//! Observations CSV per replication plus manifest.cfg.
RunReport run_simulate(ExperimentConfig const& cfg);
/*!
 * Estimate, reconstruction and error-summary files. Reads cfg.input when set,
 * otherwise simulates. Throws NumericalError when every gate with delta >= 1
 * fails.
 */
RunReport run_decompound(ExperimentConfig const& cfg);
//! C_H curve, Monte-Carlo KS check and the g-hat table for the layer model.
RunReport run_scatter(ExperimentConfig const& cfg);
//! The g x n grid: per-cell tables, replication medians and summary.json.
RunReport run_figures(ExperimentConfig const& cfg);

//! Angle between the z axis and its image, in [0, pi].
double deflection_angle(Rotation const& r);

}  // namespace so3dc
