#pragma once

#include <stdexcept>
#include <string>

namespace colombeau {

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejected input: evaluation outside a domain, invalid parameter, bad set.
class DomainError : public Error {
  public:
    using Error::Error;
};

// A fit was requested with fewer than four nonzero sup samples.
class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
  public:
    using Error::Error;
};

// Linear system condition estimate exceeded the accepted bound.
class IllConditionedError : public Error {
  public:
    using Error::Error;
};

// Scenario files: parse or validation failures (CLI exit code 1).
class ScenarioError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace colombeau
