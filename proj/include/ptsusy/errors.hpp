#pragma once

#include <stdexcept>
#include <string>

namespace ptsusy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct DegreeCapError : Error { using Error::Error; };
struct LossOfSignificanceError : Error { using Error::Error; };
struct SubdivisionLimitError : Error { using Error::Error; };
struct NonFiniteError : Error { using Error::Error; };
struct TailBoundError : Error { using Error::Error; };
struct StepUnderflowError : Error { using Error::Error; };
struct DepthError : Error { using Error::Error; };

// Configuration problems; line is 0 when the source is a flag.
struct ConfigError : Error {
    ConfigError(const std::string& what, int line, std::string field)
        : Error(line > 0 ? "line " + std::to_string(line) + ", field '" + field + "': " + what
                         : "field '" + field + "': " + what),
          line(line), field(std::move(field)) {}
    int line;
    std::string field;
};

}  // namespace ptsusy
