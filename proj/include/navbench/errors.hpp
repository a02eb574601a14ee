#pragma once

#include <stdexcept>
#include <string>

namespace navbench {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kinematics
struct InvalidState : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct DegenerateGoal : Error { using Error::Error; };

// controllers
struct InvalidStep : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };
struct InvalidAngle : Error { using Error::Error; };
struct InsufficientScan : Error { using Error::Error; };

// dwa
struct EmptySearchSpace : Error { using Error::Error; };

// world
struct OutOfBounds : Error { using Error::Error; };

// metrics
struct NoRuns : Error { using Error::Error; };
struct EmptyLog : Error { using Error::Error; };
struct NoReference : Error { using Error::Error; };
struct NoSensorData : Error { using Error::Error; };

// bench
struct ValidationError : Error { using Error::Error; };
struct UnknownController : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace navbench
