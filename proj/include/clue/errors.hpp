// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace clue {

/// Base class for all errors raised by the clue library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (addresses, hex strings, amounts).
struct ParseError : Error {
    using Error::Error;
};

/// A fixture or data file could not be loaded; the message names the file
/// and, where possible, the JSON path of the offending element.
struct LoadError : Error {
    using Error::Error;
};

/// The requested operation is not supported by this ChainSource backend.
struct CapabilityError : Error {
    using Error::Error;
};

/// A remote endpoint failed (connection, timeout, malformed response).
/// The message carries the failing JSON-RPC method name.
struct TransportError : Error {
    using Error::Error;
};

/// Invalid run configuration (missing flags, malformed config files).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace clue
