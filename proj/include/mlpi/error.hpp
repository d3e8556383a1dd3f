#pragma once

#include <stdexcept>
#include <string>

namespace mlpi {

enum class ErrorKind {
    usage,
    parse,
    verification_failed,
    digit_count_mismatch,
    negative_operand,
    divisor_straddles_zero,
    precision_exhausted,
    ambiguous_rounding,
    epsilon_too_large,
    degenerate_second_term,
    not_exactly_verifiable,
    divergent_argument,
    zero_argument,
    insufficient_reference,
};

const char* to_string(ErrorKind kind) noexcept;

// Process exit code for each error class; 0 is reserved for success.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mlpi
