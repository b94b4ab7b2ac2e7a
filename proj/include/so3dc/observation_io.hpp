// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "so3dc/processes.hpp"

namespace so3dc {

/*!
 * Observation CSV: '#' comment lines carrying key=value metadata, a
 * "w,x,y,z" header, then one quaternion per row with 17 significant digits.
 */
void write_observations(std::ostream& os, ObservationSet const& obs);
void write_observations(std::filesystem::path const& path, ObservationSet const& obs);

//! Throws IoError with the 1-based line number of a malformed row.
ObservationSet read_observations(std::istream& is);
ObservationSet read_observations(std::filesystem::path const& path);

}  // namespace so3dc
