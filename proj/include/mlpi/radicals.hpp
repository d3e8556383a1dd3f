#pragma once

// Nested radicals a_1 = sqrt(2), a_k = sqrt(2 + a_{k-1}) and the cotangent
// target c_k = a_k / sqrt(2 - a_{k-1}) = cot(pi / 2^(k+1)).

#include <cstdint>

#include "mlpi/exact.hpp"
#include "mlpi/realnum.hpp"

namespace mlpi {

struct RadicalState {
    int k = 0;
    FixedReal a_k;
    FixedReal a_km1;
    FixedReal c_k;
    std::int64_t scale_bits = 0;
};

/// a_k, a_{k-1} and c_k at a fixed binary scale, no validation. k >= 2.
RadicalState eval_radicals_at_scale(int k, std::int64_t scale_bits);

/// c_k with at least `decimal_digits` certain fractional digits. Starts at
/// bits_for_digits(D) + 2k + 64 and doubles the guard bits up to four times
/// before giving up with PrecisionExhausted.
RadicalState eval_radicals(int k, int decimal_digits);

enum class RoundingMode { nearest, floor };

const char* to_string(RoundingMode mode) noexcept;
RoundingMode parse_rounding(const std::string& text);

struct U1Selection {
    BigRational u1;
    FixedReal epsilon;  // u1 - c_k
    int k = 0;
    BigInt denominator_policy{1};
    RoundingMode rounding = RoundingMode::nearest;
};

/// u1 = round(c_k · d) / d (or floor), epsilon = u1 - c_k.
/// Throws AmbiguousRounding when c_k's interval straddles a rounding
/// boundary and EpsilonTooLarge when |epsilon| >= u1 / 10.
U1Selection select_u1(const RadicalState& state, const BigInt& denominator,
                      RoundingMode rounding = RoundingMode::nearest);

}  // namespace mlpi
