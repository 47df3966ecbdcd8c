#pragma once

#include <stdexcept>
#include <string>

namespace compute_verify {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid domain specification (bad ModelSpec/PodSpec/..., precondition violation).
struct SpecError : Error {
    using Error::Error;
};

/// Incompatible dimensions in quantity arithmetic or conversion.
struct UnitError : Error {
    using Error::Error;
};

/// Malformed scenario or report file (unknown field, missing section, bad value).
struct SchemaError : Error {
    using Error::Error;
};

/// Chip-hour ledger is internally inconsistent (e.g. more hours declared than exist).
struct LedgerError : Error {
    using Error::Error;
};

/// Training produced a non-finite loss.
struct TrainingDivergedError : Error {
    TrainingDivergedError(const std::string& msg, std::uint64_t step)
        : Error(msg), step_index(step) {}
    std::uint64_t step_index;
};

/// Transcript file is missing data required for the requested check.
struct TranscriptError : Error {
    using Error::Error;
};

/// Burst schedule cannot fit the transfer into its period.
struct ScheduleError : Error {
    using Error::Error;
};

/// Site geometry does not admit a position estimate.
struct GeometryError : Error {
    using Error::Error;
};

}  // namespace compute_verify
