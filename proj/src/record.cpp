#include "mlpi/record.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "mlpi/analysis.hpp"
#include "mlpi/error.hpp"

namespace mlpi {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kHeadDigits = 20;
constexpr int kEpsilonDigits = 20;

json rational_json(const BigRational& r) {
    return json{{"num", r.num().get_str(10)}, {"den", r.den().get_str(10)}};
}

BigRational rational_from(const json& j) {
    return BigRational(parse_bigint(j.at("num").get<std::string>()), parse_bigint(j.at("den").get<std::string>()));
}

std::string sidecar_name(const fs::path& record, const char* part) {
    return record.stem().string() + ".u2." + part + ".txt";
}

json component_json(const BigInt& v, const fs::path& record, const char* part) {
    std::string text = v.get_str(10);
    if (decimal_digit_count(v) <= kInlineDigitLimit) return text;
    std::string name = sidecar_name(record, part);
    std::string contents = text + "\n";
    write_file_atomic(record.parent_path() / name, contents);
    return json{{"file", name}, {"sha256", sha256_hex(contents)}};
}

BigInt component_from(const json& j, const fs::path& record) {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    const std::string name = j.at("file").get<std::string>();
    const std::string expected = j.at("sha256").get<std::string>();
    const fs::path p = record.parent_path() / name;
    if (!fs::exists(p)) throw Error(ErrorKind::parse, "missing sidecar file " + p.string());
    std::string contents = read_file(p);
    if (sha256_hex(contents) != expected) {
        throw Error(ErrorKind::parse, "sidecar hash mismatch for " + p.string());
    }
    if (contents.empty() || contents.back() != '\n') {
        throw Error(ErrorKind::parse, "sidecar " + p.string() + " lacks trailing newline");
    }
    contents.pop_back();
    return parse_bigint(contents);
}

}  // namespace

std::string decimal_head(const BigRational& v) {
    if (v.abs() < BigRational(1000000)) return v.to_fixed(kHeadDigits);
    return v.to_scientific(kHeadDigits);
}

FormulaRecord generate_record(int k, const BigInt& denominator, RoundingMode rounding) {
    if (k < 2) throw Error(ErrorKind::usage, "generate needs k >= 2");
    int digits = kEpsilonDigits + 10;
    U1Selection sel;
    for (int attempt = 0;; ++attempt) {
        try {
            sel = select_u1(eval_radicals(k, digits), denominator, rounding);
            if (fr_to_decimal(sel.epsilon, kEpsilonDigits).valid) break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ambiguous_rounding || attempt >= 4) throw;
        }
        if (attempt >= 4) throw Error(ErrorKind::precision_exhausted, "epsilon not resolved");
        digits *= 2;
    }

    FormulaRecord rec;
    rec.k = k;
    rec.denominator_policy = denominator;
    rec.rounding = rounding;
    rec.u1 = sel.u1;
    rec.epsilon_decimal = fr_to_decimal(sel.epsilon, kEpsilonDigits).text;
    rec.u2 = solve_u2(sel.u1, k);
    rec.u2_num_digits = decimal_digit_count(rec.u2.num());
    rec.u2_den_digits = decimal_digit_count(rec.u2.den());
    rec.u2_decimal_head = decimal_head(rec.u2);
    rec.verified = verify_formula(rec.formula()).holds;
    rec.predicted_rate = predict_rate(rec.u1);
    return rec;
}

void write_record(const FormulaRecord& rec, const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    json j;
    j["schema_version"] = rec.schema_version;
    j["k"] = rec.k;
    j["denominator_policy"] = rec.denominator_policy.get_str(10);
    j["rounding"] = to_string(rec.rounding);
    j["u1"] = rational_json(rec.u1);
    j["epsilon_decimal"] = rec.epsilon_decimal;
    j["u2"] = json{{"num", component_json(rec.u2.num(), path, "num")},
                   {"den", component_json(rec.u2.den(), path, "den")}};
    j["u2_digit_counts"] = json{{"num_digits", rec.u2_num_digits}, {"den_digits", rec.u2_den_digits}};
    j["u2_decimal_head"] = rec.u2_decimal_head;
    j["verified"] = rec.verified;
    j["predicted_rate"] = rec.predicted_rate;
    j["created_with"] = rec.created_with;
    write_file_atomic(path, j.dump(2) + "\n");
}

FormulaRecord read_record(const fs::path& path) {
    if (!fs::exists(path)) throw Error(ErrorKind::parse, "no such record: " + path.string());
    try {
        const json j = json::parse(read_file(path));
        FormulaRecord rec;
        rec.schema_version = j.at("schema_version").get<int>();
        if (rec.schema_version != kSchemaVersion) {
            throw Error(ErrorKind::parse, "unsupported schema_version " + std::to_string(rec.schema_version));
        }
        rec.k = j.at("k").get<int>();
        rec.denominator_policy = parse_bigint(j.at("denominator_policy").get<std::string>());
        rec.rounding = parse_rounding(j.at("rounding").get<std::string>());
        rec.u1 = rational_from(j.at("u1"));
        rec.epsilon_decimal = j.at("epsilon_decimal").get<std::string>();
        const json& u2 = j.at("u2");
        BigInt num = component_from(u2.at("num"), path);
        BigInt den = component_from(u2.at("den"), path);
        if (sgn(den) == 0) throw Error(ErrorKind::parse, "u2 has zero denominator");
        rec.u2 = BigRational(std::move(num), std::move(den));
        rec.u2_num_digits = j.at("u2_digit_counts").at("num_digits").get<std::size_t>();
        rec.u2_den_digits = j.at("u2_digit_counts").at("den_digits").get<std::size_t>();
        rec.u2_decimal_head = j.at("u2_decimal_head").get<std::string>();
        rec.verified = j.at("verified").get<bool>();
        rec.predicted_rate = j.at("predicted_rate").get<double>();
        rec.created_with = j.at("created_with").get<std::string>();
        return rec;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, "malformed record " + path.string() + ": " + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::usage) throw Error(ErrorKind::parse, e.what());
        throw;
    }
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::parse, "cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 0xF];
    }
    return out;
}

}  // namespace mlpi
