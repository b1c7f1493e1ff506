#pragma once

#include <stdexcept>
#include <string>

namespace nanograting {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A physical argument outside its domain, e.g. a non-positive velocity.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad user input such as an unknown preset or key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Detector grid too coarse for the fringe period.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Inverse problem cannot be posed, e.g. a flat trace or too few stripes.
class FitError : public Error {
 public:
  using Error::Error;
};

// Arrival height on or above the straight source-grating line.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace nanograting
