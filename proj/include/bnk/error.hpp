#pragma once

#include <stdexcept>
#include <string>

namespace bnk {

enum class ErrorKind {
    DimensionMismatch,
    NonHomogeneousSum,
    ParseError,
    ValidationError,
    NotAnEdge,
    IndexOutOfRange,
    InvalidBasepoint,
    MissingUnknotComponent,
    TooLarge,
    NotAComplex,
    NotAKnotProfile,
    UnexpectedGap,
    NotASaddlePair,
    NotPositiveCrossing,
    ChainMapLawViolated,
    IdentityCheckFailed,
    VerificationFailed,
    RepresentativeNotCycle,
    UnknownProperty,
};

const char* errorKindName(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* errorKindName(ErrorKind k) {
    switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonHomogeneousSum: return "NonHomogeneousSum";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidBasepoint: return "InvalidBasepoint";
    case ErrorKind::MissingUnknotComponent: return "MissingUnknotComponent";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotAKnotProfile: return "NotAKnotProfile";
    case ErrorKind::UnexpectedGap: return "UnexpectedGap";
    case ErrorKind::NotASaddlePair: return "NotASaddlePair";
    case ErrorKind::NotPositiveCrossing: return "NotPositiveCrossing";
    case ErrorKind::ChainMapLawViolated: return "ChainMapLawViolated";
    case ErrorKind::IdentityCheckFailed: return "IdentityCheckFailed";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::RepresentativeNotCycle: return "RepresentativeNotCycle";
    case ErrorKind::UnknownProperty: return "UnknownProperty";
    }
    return "Error";
}

}  // namespace bnk
