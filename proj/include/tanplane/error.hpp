#pragma once

#include <stdexcept>
#include <string>

namespace tanplane {

enum class ErrorKind {
    PoleProximity,
    BranchPointHit,
    RefinementDiverged,
    NotMinimalPeriod,
    ZeroInCycle,
    SineVanishes,
    TangentVanishes,
    Diverged,
    HitSingularity,
    WrongBasin,
    DomainError,
    BracketFailed,
    ContinuationStalled,
    LostCycle,
};

const char* to_string(ErrorKind kind);

// Numerical failure. Precondition violations use std::invalid_argument instead.
class NumericError : public std::runtime_error {
public:
    NumericError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// refine_cycle found that a proper divisor of the requested period already closes up.
class NotMinimalPeriodError : public NumericError {
public:
    NotMinimalPeriodError(int requested, int divisor)
        : NumericError(ErrorKind::NotMinimalPeriod,
                       "period " + std::to_string(requested) + " reduces to " + std::to_string(divisor)),
          divisor_(divisor) {}

    int divisor() const noexcept { return divisor_; }

private:
    int divisor_;
};

}  // namespace tanplane
