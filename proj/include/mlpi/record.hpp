#pragma once

// FormulaRecord persistence.
//
// Records are JSON (UTF-8). Big integers are always decimal strings. A u2
// component with more than kInlineDigitLimit decimal digits is written to a
// sidecar text file next to the record ("<stem>.u2.num.txt" /
// "<stem>.u2.den.txt": decimal, optional leading '-', no separators, one
// trailing newline) and referenced by relative path plus SHA-256 of the file.

#include <cstdint>
#include <filesystem>
#include <string>

#include "mlpi/exact.hpp"
#include "mlpi/machin.hpp"
#include "mlpi/radicals.hpp"

namespace mlpi {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kInlineDigitLimit = 10000;
inline constexpr const char* kToolVersion = "mlpi 1.0.0";

struct FormulaRecord {
    int schema_version = kSchemaVersion;
    int k = 0;
    BigInt denominator_policy{1};
    RoundingMode rounding = RoundingMode::nearest;
    BigRational u1;
    std::string epsilon_decimal;  // u1 - c_k, 20 fractional digits, signed
    BigRational u2;
    std::size_t u2_num_digits = 0;
    std::size_t u2_den_digits = 0;
    std::string u2_decimal_head;
    bool verified = false;
    double predicted_rate = 0.0;
    std::string created_with = kToolVersion;

    MachinFormula formula() const { return MachinFormula::two_term(u1, k, u2); }
};

/// 20 fractional digits, fixed below 10^6 and scientific at or above it.
std::string decimal_head(const BigRational& v);

/// Runs radicals -> u1 selection -> u2 solve -> exact verification.
FormulaRecord generate_record(int k, const BigInt& denominator, RoundingMode rounding);

/// Writes the record (and sidecars when needed) atomically.
void write_record(const FormulaRecord& rec, const std::filesystem::path& path);

/// Parses the record, reading sidecars relative to the record's directory.
/// Parse errors, missing files and hash mismatches throw ErrorKind::parse.
FormulaRecord read_record(const std::filesystem::path& path);

/// write to "<path>.tmp" then rename over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& data);

}  // namespace mlpi
