#pragma once

#include <stdexcept>
#include <string>

namespace capm {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- geometry --
class DegenerateView : public Error {
 public:
  explicit DegenerateView(const std::string& what) : Error(what) {}
};
class AtInfinity : public Error {
 public:
  explicit AtInfinity(const std::string& what) : Error(what) {}
};
class BehindCamera : public Error {
 public:
  explicit BehindCamera(const std::string& what) : Error(what) {}
};
class HorizonInView : public Error {
 public:
  explicit HorizonInView(const std::string& what) : Error(what) {}
};

// -- regions --
class NonIntervalFeasibility : public Error {
 public:
  explicit NonIntervalFeasibility(const std::string& what) : Error(what) {}
};
class Unclassifiable : public Error {
 public:
  explicit Unclassifiable(const std::string& what) : Error(what) {}
};

// -- sampling / planning --
class TruncationStarved : public Error {
 public:
  explicit TruncationStarved(const std::string& what) : Error(what) {}
};
class InfeasibleRegion : public Error {
 public:
  explicit InfeasibleRegion(const std::string& what) : Error(what) {}
};
class ObservationFailed : public Error {
 public:
  explicit ObservationFailed(const std::string& what) : Error(what) {}
};
class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// -- configuration --
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};
class ParseError : public ConfigError {
 public:
  explicit ParseError(const std::string& what) : ConfigError(what) {}
};
class UnknownKey : public ConfigError {
 public:
  explicit UnknownKey(const std::string& what) : ConfigError(what) {}
};
class RangeError : public ConfigError {
 public:
  explicit RangeError(const std::string& what) : ConfigError(what) {}
};

}  // namespace capm
