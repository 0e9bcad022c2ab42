#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter validation failures; each names the violated field.
struct NonPositiveOmega : Error {
    explicit NonPositiveOmega(const std::string& msg) : Error(msg) {}
};
struct NegativeResonance : Error {
    explicit NegativeResonance(const std::string& msg) : Error(msg) {}
};
struct NegativeCoupling : Error {
    explicit NegativeCoupling(const std::string& msg) : Error(msg) {}
};

// Special functions.
struct NegativeDegree : Error {
    explicit NegativeDegree(const std::string& msg) : Error(msg) {}
};

// Root finding.
struct NoBracket : Error {
    explicit NoBracket(const std::string& msg) : Error(msg) {}
};

// Truncated-space machinery.
struct DimensionOverflow : Error {
    explicit DimensionOverflow(const std::string& msg) : Error(msg) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};
struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& msg) : Error(msg) {}
};

// Sweep/CLI layer.
struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace rabi
