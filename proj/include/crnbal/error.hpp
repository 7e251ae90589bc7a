#pragma once

#include <stdexcept>
#include <string>

namespace crnbal {

// Machine-readable failure categories. Every throwing operation documents which
// codes it can raise; messages carry the human-readable detail.
enum class ErrorCode {
    DuplicateSpecies,
    OrphanSpecies,
    SelfLoop,
    DuplicateRateLabel,
    DimensionMismatch,
    SyntaxError,
    NegativeOrZeroRate,
    UnknownToken,
    UnknownLabel,
    IncompleteRates,
    NotInLattice,
    CycleNotBasedAtState,
    NoBaseState,
    NotDetailedBalanced,
    NotComplexBalanced,
    NotBirthDeathForm,
    EmptyTruncation,
    NoConvergence,
    IoError,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace crnbal
