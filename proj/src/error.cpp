#include "crnbal/error.hpp"

namespace crnbal {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateSpecies: return "DuplicateSpecies";
        case ErrorCode::OrphanSpecies: return "OrphanSpecies";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateRateLabel: return "DuplicateRateLabel";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::NegativeOrZeroRate: return "NegativeOrZeroRate";
        case ErrorCode::UnknownToken: return "UnknownToken";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::IncompleteRates: return "IncompleteRates";
        case ErrorCode::NotInLattice: return "NotInLattice";
        case ErrorCode::CycleNotBasedAtState: return "CycleNotBasedAtState";
        case ErrorCode::NoBaseState: return "NoBaseState";
        case ErrorCode::NotDetailedBalanced: return "NotDetailedBalanced";
        case ErrorCode::NotComplexBalanced: return "NotComplexBalanced";
        case ErrorCode::NotBirthDeathForm: return "NotBirthDeathForm";
        case ErrorCode::EmptyTruncation: return "EmptyTruncation";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace crnbal
