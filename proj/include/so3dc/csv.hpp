// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace so3dc::csv {

//! Shortest round-trippable form with 17 significant digits.
std::string format_double(double v);

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

//! Strict double parse of a whole field; throws std::invalid_argument.
double parse_double(std::string_view field);

}  // namespace so3dc::csv
