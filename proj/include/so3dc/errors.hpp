// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace so3dc {

//! Invalid configuration value or syntax.
class ConfigError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//! Unreadable/unwritable file or malformed file contents.
class IoError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//! Estimation failed numerically (e.g. every gate rejected).
class NumericalError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

}  // namespace so3dc
