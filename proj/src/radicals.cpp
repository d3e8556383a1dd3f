#include "mlpi/radicals.hpp"

#include <string>

#include "mlpi/error.hpp"

namespace mlpi {

namespace {
constexpr int kMaxRetries = 4;
}

RadicalState eval_radicals_at_scale(int k, std::int64_t scale_bits) {
    if (k < 2) throw Error(ErrorKind::usage, "nested radicals need k >= 2");
    const FixedReal two = FixedReal::from_integer(2, scale_bits);
    FixedReal prev;
    FixedReal cur = fr_sqrt(two, scale_bits);
    for (int j = 2; j <= k; ++j) {
        prev = cur;
        cur = fr_sqrt(two + prev, scale_bits);
    }
    // 2 - a_{k-1} ~ (pi / 2^k)^2 loses about 2k bits to cancellation.
    FixedReal gap = fr_sqrt(two - prev, scale_bits);
    RadicalState st;
    st.k = k;
    st.c_k = fr_div(cur, gap, scale_bits);
    st.a_k = std::move(cur);
    st.a_km1 = std::move(prev);
    st.scale_bits = scale_bits;
    return st;
}

RadicalState eval_radicals(int k, int decimal_digits) {
    if (decimal_digits < 1) throw Error(ErrorKind::usage, "decimal_digits must be >= 1");
    std::int64_t guard = 2 * static_cast<std::int64_t>(k) + 64;
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        try {
            RadicalState st = eval_radicals_at_scale(k, bits_for_digits(decimal_digits) + guard);
            if (fr_to_decimal(st.c_k, decimal_digits).valid) return st;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::negative_operand &&
                e.kind() != ErrorKind::divisor_straddles_zero) {
                throw;
            }
        }
        guard *= 2;
    }
    throw Error(ErrorKind::precision_exhausted,
                "c_" + std::to_string(k) + " not resolved to " + std::to_string(decimal_digits) +
                    " digits after " + std::to_string(kMaxRetries) + " retries");
}

const char* to_string(RoundingMode mode) noexcept {
    return mode == RoundingMode::floor ? "floor" : "nearest";
}

RoundingMode parse_rounding(const std::string& text) {
    if (text == "nearest") return RoundingMode::nearest;
    if (text == "floor") return RoundingMode::floor;
    throw Error(ErrorKind::usage, "rounding must be 'nearest' or 'floor', got '" + text + "'");
}

U1Selection select_u1(const RadicalState& state, const BigInt& denominator, RoundingMode rounding) {
    if (denominator <= 0) throw Error(ErrorKind::usage, "denominator policy must be positive");
    const FixedReal& c = state.c_k;
    const std::int64_t s = c.scale();

    // Rounded integer multiple of 1/d for an endpoint m·2^-s.
    auto snap = [&](const BigInt& m) {
        BigInt v = m * denominator;
        if (rounding == RoundingMode::nearest) v += pow2(static_cast<std::uint64_t>(s - 1));
        return shift_floor(v, -s);
    };
    BigInt lo = snap(c.mantissa() - c.err_ulp());
    BigInt hi = snap(c.mantissa() + c.err_ulp());
    if (lo != hi) {
        throw Error(ErrorKind::ambiguous_rounding,
                    "c_" + std::to_string(state.k) + " straddles a rounding boundary; raise precision");
    }

    U1Selection sel;
    sel.k = state.k;
    sel.denominator_policy = denominator;
    sel.rounding = rounding;
    sel.u1 = BigRational(lo, denominator);
    if (sel.u1.sign() <= 0) {
        throw Error(ErrorKind::epsilon_too_large, "u1 rounds to a non-positive value");
    }
    sel.epsilon = fr_sub(FixedReal::from_rational(sel.u1, s), c);

    // |epsilon| << u1, concretely |epsilon| < u1 / 10.
    BigRational eps_hi = sel.epsilon.abs().upper();
    if (eps_hi * BigRational(10) >= sel.u1) {
        throw Error(ErrorKind::epsilon_too_large,
                    "|epsilon| is not small against u1 = " + sel.u1.to_string() +
                        "; use a larger denominator policy");
    }
    return sel;
}

}  // namespace mlpi
