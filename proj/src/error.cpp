#include "mlpi/error.hpp"

namespace mlpi {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::usage: return "Usage";
    case ErrorKind::parse: return "Parse";
    case ErrorKind::verification_failed: return "VerificationFailed";
    case ErrorKind::digit_count_mismatch: return "DigitCountMismatch";
    case ErrorKind::negative_operand: return "NegativeOperand";
    case ErrorKind::divisor_straddles_zero: return "DivisorStraddlesZero";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
    case ErrorKind::ambiguous_rounding: return "AmbiguousRounding";
    case ErrorKind::epsilon_too_large: return "EpsilonTooLarge";
    case ErrorKind::degenerate_second_term: return "DegenerateSecondTerm";
    case ErrorKind::not_exactly_verifiable: return "NotExactlyVerifiable";
    case ErrorKind::divergent_argument: return "DivergentArgument";
    case ErrorKind::zero_argument: return "ZeroArgument";
    case ErrorKind::insufficient_reference: return "InsufficientReference";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::epsilon_too_large:
    case ErrorKind::divergent_argument:
    case ErrorKind::zero_argument:
        return 2;
    case ErrorKind::parse:
        return 3;
    case ErrorKind::verification_failed:
    case ErrorKind::not_exactly_verifiable:
        return 4;
    case ErrorKind::negative_operand:
    case ErrorKind::divisor_straddles_zero:
    case ErrorKind::precision_exhausted:
    case ErrorKind::ambiguous_rounding:
    case ErrorKind::insufficient_reference:
        return 5;
    case ErrorKind::degenerate_second_term:
        return 6;
    case ErrorKind::digit_count_mismatch:
        return 7;
    }
    return 1;
}

}  // namespace mlpi
