#pragma once

#include <stdexcept>
#include <string>

namespace k3dual {

enum class ErrorCode {
    DegenerateInput,
    OriginNotInterior,
    NonIntegralDual,
    NotReflexive,
    WrongDegree,
    NotInLattice,
    InvalidWeightSystem,
    RankDeficient,
    InvalidOverride,
    InvalidOrdering,
    NoBasis,
    L0NotZero,
    FormulaMismatch,
    NotSymmetric,
    Degenerate,
    NotEven,
    InvalidParameter,
    GroupTooLarge,
    NonIntegral,
    DimensionMismatch,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace k3dual
