#pragma once

#include <stdexcept>
#include <string>

namespace lrdkit {

/// Base class for all lrdkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument, flag, or configuration value. Maps to CLI exit code 2.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message carries file path and line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A series or window whose statistics are undefined (zero variance).
class DegenerateSeriesError : public Error {
 public:
  using Error::Error;
};

/// Not enough usable data for the requested analysis
/// (decay range too short, too few rescaled-range spans, ...).
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrdkit
