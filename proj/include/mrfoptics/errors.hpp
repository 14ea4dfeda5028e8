#pragma once

#include <stdexcept>
#include <string>

namespace mrfoptics {

// Thrown when a model assigns zero total mass to the conditioning event.
// Callers must never fall back to a silent 0/0.
class NormalizationError : public std::runtime_error {
 public:
  explicit NormalizationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the analytic class enumerations when the polarizer tunings are
// equal or orthogonal, so that classes the derivation treats as distinct
// coincide.  Callers may fall back to the continuous-limit rate.
class DegenerateAnglesError : public std::runtime_error {
 public:
  explicit DegenerateAnglesError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unexpected input data (for example an export file that does
// not parse).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Failure to read or write a file.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mrfoptics
