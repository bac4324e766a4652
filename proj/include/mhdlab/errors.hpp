#pragma once

#include <stdexcept>
#include <string>

namespace mhdlab {

/// Invalid or inconsistent user configuration. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested dt violates the advective CFL bound; carries the largest
/// admissible dt at the offending state. CLI exit code 3.
struct CflError : std::runtime_error {
    double admissible_dt;
    explicit CflError(double admissible)
        : std::runtime_error("dt exceeds the CFL-admissible step " +
                             std::to_string(admissible)),
          admissible_dt(admissible) {}
};

/// Non-finite values or the blow-up guard tripped. CLI exit code 3.
struct NumericalAbort : std::runtime_error {
    explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mhdlab
