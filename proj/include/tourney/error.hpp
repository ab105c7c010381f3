#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

/// Base for every error raised by the library. The CLI maps these to the
/// data-error exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent tabular input. The message names the source,
/// line and column where possible.
class IngestError : public Error {
public:
    using Error::Error;
};

class InvalidPairing : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A round-robin result set is missing (or duplicates) a pairing.
class IncompleteRoundRobin : public Error {
public:
    using Error::Error;
};

/// Two rankings or distributions that do not describe the same team set.
class InvalidComparison : public Error {
public:
    using Error::Error;
};

class UnsupportedSize : public Error {
public:
    using Error::Error;
};

}  // namespace tourney
