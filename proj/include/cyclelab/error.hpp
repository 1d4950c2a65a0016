#ifndef CYCLELAB_ERROR_HPP
#define CYCLELAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cyclelab {

enum class ErrorCode {
    // input / usage
    SyntaxError,
    UndeclaredIdentifier,
    DuplicateDefinition,
    UnknownSymbol,
    UnboundSymbol,
    BadIndex,
    DimensionMismatch,
    Precondition,
    Io,
    // math domain
    ZeroPolynomial,
    PiInExactMode,
    PiMismatch,
    NotPerturbationOfLinearCenter,
    NonlinearInEps,
    NonzeroLinearTrace,
    WrongLinearPart,
    NotCenterFocus,
    SubstitutionDoesNotVanish,
    HalfPowerResidue,
    NonzeroConstantTerm,
    FirstOrderNotZero,
    DecompositionNotFound,
    UnsupportedPoleOrder,
    ZeroCurve,
    NonMonicUndividable,
    NoReturn,
    StepSizeUnderflow,
    Blowup,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UndeclaredIdentifier: return "UndeclaredIdentifier";
        case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::UnboundSymbol: return "UnboundSymbol";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Precondition: return "Precondition";
        case ErrorCode::Io: return "Io";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::PiInExactMode: return "PiInExactMode";
        case ErrorCode::PiMismatch: return "PiMismatch";
        case ErrorCode::NotPerturbationOfLinearCenter: return "NotPerturbationOfLinearCenter";
        case ErrorCode::NonlinearInEps: return "NonlinearInEps";
        case ErrorCode::NonzeroLinearTrace: return "NonzeroLinearTrace";
        case ErrorCode::WrongLinearPart: return "WrongLinearPart";
        case ErrorCode::NotCenterFocus: return "NotCenterFocus";
        case ErrorCode::SubstitutionDoesNotVanish: return "SubstitutionDoesNotVanish";
        case ErrorCode::HalfPowerResidue: return "HalfPowerResidue";
        case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
        case ErrorCode::FirstOrderNotZero: return "FirstOrderNotZero";
        case ErrorCode::DecompositionNotFound: return "DecompositionNotFound";
        case ErrorCode::UnsupportedPoleOrder: return "UnsupportedPoleOrder";
        case ErrorCode::ZeroCurve: return "ZeroCurve";
        case ErrorCode::NonMonicUndividable: return "NonMonicUndividable";
        case ErrorCode::NoReturn: return "NoReturn";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::Blowup: return "Blowup";
    }
    return "Unknown";
}

/// True for errors that indicate bad input rather than a failed computation.
inline bool is_usage_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::SyntaxError:
        case ErrorCode::UndeclaredIdentifier:
        case ErrorCode::DuplicateDefinition:
        case ErrorCode::UnknownSymbol:
        case ErrorCode::UnboundSymbol:
        case ErrorCode::BadIndex:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::Precondition:
        case ErrorCode::Io:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace cyclelab

#endif
