#include "mlpi/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlpi/analysis.hpp"
#include "mlpi/error.hpp"
#include "mlpi/radicals.hpp"
#include "mlpi/record.hpp"
#include "mlpi/series.hpp"

namespace mlpi {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kMaxRetries = 4;

std::string fixed(double v, int prec) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(prec) << v;
    return ss.str();
}

BigInt parse_den(const std::string& text) {
    BigInt d = parse_bigint(text);
    if (d <= 0) throw Error(ErrorKind::usage, "--den must be a positive integer");
    return d;
}

// Smallest power-of-ten denominator for which |epsilon| < u1/10.
FormulaRecord generate_auto(int k, RoundingMode rounding) {
    BigInt d = 1;
    for (int i = 0; i < 7; ++i, d *= 10) {
        try {
            return generate_record(k, d, rounding);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::epsilon_too_large) throw;
        }
    }
    throw Error(ErrorKind::epsilon_too_large, "no denominator up to 10^6 keeps |epsilon| < u1/10");
}

void print_summary(const FormulaRecord& rec, std::ostream& out) {
    out << "k             " << rec.k << "\n"
        << "den policy    " << rec.denominator_policy.get_str(10) << " (" << to_string(rec.rounding) << ")\n"
        << "u1            " << rec.u1.to_string() << "\n"
        << "epsilon       " << rec.epsilon_decimal << "\n";
    if (rec.u2_num_digits + rec.u2_den_digits <= 80) out << "u2            " << rec.u2.to_string() << "\n";
    out << "u2 digits     " << rec.u2_num_digits << " / " << rec.u2_den_digits << "\n"
        << "u2 head       " << rec.u2_decimal_head << "\n"
        << "verified      " << (rec.verified ? "true" : "false") << "\n"
        << "rate          " << fixed(rec.predicted_rate, 3) << " digits/term\n";
}

int cmd_generate(int k, const std::string& den, const std::string& rounding, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    FormulaRecord rec = generate_record(k, parse_den(den), parse_rounding(rounding));
    const fs::path path = resolve_path(out_path.empty() ? "k" + std::to_string(k) + ".json" : out_path);
    write_record(rec, path);
    print_summary(rec, out);
    out << "record        " << path.string() << "\n";
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    err << "generate: " << fixed(dt.count(), 3) << " s\n";
    return rec.verified ? 0 : exit_code(ErrorKind::verification_failed);
}

int cmd_verify(const std::string& path_text, std::ostream& out, std::ostream& err) {
    const FormulaRecord rec = read_record(resolve_path(path_text));
    const Verification v = verify_formula(rec.formula());
    if (!v.holds) {
        err << "verification failed: product is not i\n";
        return exit_code(ErrorKind::verification_failed);
    }
    const std::size_t nd = decimal_digit_count(rec.u2.num());
    const std::size_t dd = decimal_digit_count(rec.u2.den());
    if (nd != rec.u2_num_digits || dd != rec.u2_den_digits) {
        err << "digit counts " << nd << "/" << dd << " do not match recorded " << rec.u2_num_digits << "/"
            << rec.u2_den_digits << "\n";
        return exit_code(ErrorKind::digit_count_mismatch);
    }
    out << "ok: pi/4 = " << BigInt(rec.formula().terms[0].alpha.num()).get_str(10) << "*arctan(1/("
        << rec.u1.to_string() << ")) + arctan(1/u2), u2 digits " << nd << "/" << dd << "\n";
    return 0;
}

struct PiSource {
    std::optional<MachinFormula> formula;
    int eq18_k = 0;
    double rate = 0.0;

    std::vector<FixedReal> partial(int terms, std::int64_t scale) const {
        return formula ? pi_partial_sums(*formula, terms, scale) : pi_eq18_partial_sums(eq18_k, terms, scale);
    }
};

int cmd_compute_pi(const std::string& formula_path, int k, int digits, int terms, const std::string& out_path,
                   bool allow_unverified, std::ostream& out, std::ostream& err) {
    if (formula_path.empty() == (k == 0)) throw Error(ErrorKind::usage, "give exactly one of --formula or --k");
    if ((digits == 0) == (terms == 0)) throw Error(ErrorKind::usage, "give exactly one of --digits or --terms");
    if (digits < 0 || terms < 0) throw Error(ErrorKind::usage, "--digits/--terms must be positive");

    PiSource src;
    if (!formula_path.empty()) {
        FormulaRecord rec = read_record(resolve_path(formula_path));
        src.formula = rec.formula();
        if (!verify_formula(*src.formula).holds && !allow_unverified) {
            err << "formula does not verify; pass --allow-unverified to evaluate it anyway\n";
            return exit_code(ErrorKind::verification_failed);
        }
        src.rate = formula_rate(*src.formula);
    } else {
        if (k < 2) throw Error(ErrorKind::usage, "--k must be >= 2");
        src.eq18_k = k;
        RadicalState st = eval_radicals_at_scale(k, 64 + 4 * k);
        const double c = st.c_k.center().to_double();
        src.rate = std::log10(1.0 + 4.0 * c * c);
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::string text;
    int used_terms = 0;
    std::vector<FixedReal> sums;
    if (digits > 0) {
        used_terms = static_cast<int>(std::ceil(digits / src.rate)) + 2;
        std::int64_t guard = 64;
        for (int attempt = 0;; ++attempt) {
            sums = src.partial(used_terms, bits_for_digits(digits) + guard);
            DecimalString d = fr_to_decimal(sums.back(), digits);
            if (d.valid) {
                text = d.text;
                break;
            }
            if (attempt >= kMaxRetries) {
                throw Error(ErrorKind::precision_exhausted, "pi digits did not validate");
            }
            used_terms += 2;
            guard *= 2;
        }
    } else {
        used_terms = terms;
        const int cap = static_cast<int>(std::ceil(terms * src.rate)) + 20;
        sums = src.partial(terms, bits_for_digits(cap) + 64);
        const int valid = fr_valid_digits(sums.back(), cap);
        if (valid < 0) throw Error(ErrorKind::precision_exhausted, "no validated digits");
        text = fr_to_decimal(sums.back(), valid).text;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

    out << text << "\n";
    if (!out_path.empty()) write_file_atomic(resolve_path(out_path), text + "\n");

    double measured = src.rate;
    if (sums.size() >= 3) {
        measured = fr_sub(sums[sums.size() - 2], sums[sums.size() - 3]).log10_abs() -
                   fr_sub(sums[sums.size() - 1], sums[sums.size() - 2]).log10_abs();
    }
    const auto dot = text.find('.');
    err << "terms used: " << used_terms << ", validated digits: "
        << (dot == std::string::npos ? 0 : text.size() - dot - 1) << ", measured rate: " << fixed(measured, 2)
        << " digits/term (predicted " << fixed(src.rate, 2) << "), " << fixed(dt.count(), 3) << " s\n";
    return 0;
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int k = std::stoi(item, &used);
            if (used != item.size() || k < 2) throw std::invalid_argument(item);
            ks.push_back(k);
        } catch (const std::exception&) {
            throw Error(ErrorKind::usage, "bad k in --k list: '" + item + "'");
        }
    }
    if (ks.empty()) throw Error(ErrorKind::usage, "--k list is empty");
    return ks;
}

json report_json(const ConvergenceReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"terms", s.terms}, {"correct_digits", s.correct_digits}});
    json j{{"k", r.k},
           {"u1", {{"num", r.u1.num().get_str(10)}, {"den", r.u1.den().get_str(10)}}},
           {"formula_digits_per_term", nullptr},
           {"predicted_digits_per_term", r.predicted_digits_per_term},
           {"reported_rate", nullptr},
           {"slope_defined", r.formula_digits_per_term.has_value()},
           {"in_band", r.in_band},
           {"samples", samples},
           {"wall_time_per_term_s", r.wall_time_per_term.count()}};
    if (r.formula_digits_per_term) j["formula_digits_per_term"] = *r.formula_digits_per_term;
    if (r.reported_rate) j["reported_rate"] = *r.reported_rate;
    return j;
}

std::string report_table(const std::vector<ConvergenceReport>& reports) {
    std::ostringstream ss;
    ss << std::left << std::setw(5) << "k" << std::setw(16) << "u1" << std::right << std::setw(11) << "predicted"
       << std::setw(10) << "measured" << std::setw(7) << "published" << "  " << "band\n";
    for (const auto& r : reports) {
        std::string u1 = r.u1.to_string();
        if (u1.size() > 15) u1 = u1.substr(0, 12) + "...";
        ss << std::left << std::setw(5) << r.k << std::setw(16) << u1 << std::right << std::setw(11)
           << fixed(r.predicted_digits_per_term, 3) << std::setw(10)
           << (r.formula_digits_per_term ? fixed(*r.formula_digits_per_term, 3) : "undef") << std::setw(7)
           << (r.reported_rate ? std::to_string(*r.reported_rate) : "-") << "  "
           << (!r.formula_digits_per_term ? "FLAG: slope undefined (needs >= 2 samples with terms >= 3)"
                                          : (r.in_band ? "ok" : "FLAG: outside +-15% band"))
           << "\n";
    }
    return ss.str();
}

int cmd_bench(const std::string& k_list, int max_terms, const std::string& den, const std::string& rounding,
              const std::string& out_dir, std::ostream& out, std::ostream& err) {
    if (max_terms < 1) throw Error(ErrorKind::usage, "--max-terms must be >= 1");
    const std::vector<int> ks = parse_k_list(k_list);
    const RoundingMode mode = parse_rounding(rounding);

    std::vector<MachinFormula> formulas;
    double max_rate = 0.0;
    for (int k : ks) {
        FormulaRecord rec = den == "auto" ? generate_auto(k, mode) : generate_record(k, parse_den(den), mode);
        if (!rec.verified) throw Error(ErrorKind::verification_failed, "generated formula for k=" + std::to_string(k));
        formulas.push_back(rec.formula());
        max_rate = std::max(max_rate, formula_rate(formulas.back()));
    }
    const ReferencePi reference = reference_pi(static_cast<int>(std::ceil(max_rate * max_terms)) + 30);

    std::vector<ConvergenceReport> reports(ks.size());
    const auto n = static_cast<std::int64_t>(ks.size());
    std::vector<std::exception_ptr> failures(ks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        try {
            reports[idx] = measure_convergence(formulas[idx], max_terms, reference);
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    }
    for (auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    json j = json::array();
    for (const auto& r : reports) j.push_back(report_json(r));
    const std::string table = report_table(reports);
    const fs::path dir = resolve_path(out_dir);
    fs::create_directories(dir);
    write_file_atomic(dir / "bench.json", j.dump(2) + "\n");
    write_file_atomic(dir / "bench.txt", table);
    out << table;
    for (const auto& r : reports) {
        err << "k=" << r.k << ": " << fixed(r.wall_time_per_term.count() * 1e3, 3) << " ms/term\n";
    }
    return 0;
}

int cmd_solve_second(std::uint64_t alpha1, const std::string& beta1_text, std::ostream& out) {
    const BigRational beta1 = BigRational::parse(beta1_text);
    const BigRational beta2 = solve_second_term(alpha1, beta1);
    out << "beta2 = " << beta2.to_string() << "\n"
        << "head  = " << decimal_head(beta2) << "\n";
    return 0;
}

}  // namespace

fs::path resolve_path(const std::string& p) {
    fs::path path(p);
    if (path.is_absolute()) return path;
    if (const char* wd = std::getenv(kWorkdirEnv); wd != nullptr && *wd != '\0') return fs::path(wd) / path;
    return path;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-term Machin-like formulas for pi: generate, verify, compute, benchmark"};
    app.name("mlpi");
    app.require_subcommand(1);

    int gen_k = 0;
    std::string gen_den = "1";
    std::string gen_rounding = "nearest";
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Build and verify the formula for nesting depth k");
    gen->add_option("k", gen_k, "Nesting depth (>= 2)")->required();
    gen->add_option("--den", gen_den, "u1 is a multiple of 1/den");
    gen->add_option("--rounding", gen_rounding, "nearest | floor");
    gen->add_option("--out", gen_out, "Record path (default k<k>.json)");

    std::string ver_path;
    auto* ver = app.add_subcommand("verify", "Exactly re-verify a formula record");
    ver->add_option("path", ver_path, "Record path")->required();

    std::string pi_formula;
    int pi_k = 0;
    int pi_digits = 0;
    int pi_terms = 0;
    std::string pi_out;
    bool pi_unverified = false;
    auto* pi = app.add_subcommand("compute-pi", "Digits of pi from a record or from the radical series");
    pi->add_option("--formula", pi_formula, "Formula record");
    pi->add_option("--k", pi_k, "Nesting depth for the radical-argument series");
    pi->add_option("--digits", pi_digits, "Fractional digits to produce");
    pi->add_option("--terms", pi_terms, "Series terms to sum");
    pi->add_option("--out", pi_out, "Also write digits to this file");
    pi->add_flag("--allow-unverified", pi_unverified, "Evaluate records that fail verification");

    std::string bench_k;
    int bench_terms = 0;
    std::string bench_den = "auto";
    std::string bench_rounding = "nearest";
    std::string bench_out = ".";
    auto* bench = app.add_subcommand("bench", "Measure digits per term for several k");
    bench->add_option("--k", bench_k, "Comma-separated k values")->required();
    bench->add_option("--max-terms", bench_terms, "Largest truncation")->required();
    bench->add_option("--den", bench_den, "Denominator policy or 'auto'");
    bench->add_option("--rounding", bench_rounding, "nearest | floor");
    bench->add_option("--out-dir", bench_out, "Directory for bench.json and bench.txt");

    std::uint64_t sec_alpha = 0;
    std::string sec_beta;
    auto* sec = app.add_subcommand("solve-second", "Solve pi/4 = A*arctan(1/beta1) + arctan(1/beta2)");
    sec->add_option("--alpha1", sec_alpha, "Positive integer A")->required();
    sec->add_option("--beta1", sec_beta, "num or num/den")->required();

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("mlpi");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return exit_code(ErrorKind::usage);
    }

    try {
        if (*gen) return cmd_generate(gen_k, gen_den, gen_rounding, gen_out, out, err);
        if (*ver) return cmd_verify(ver_path, out, err);
        if (*pi) {
            return cmd_compute_pi(pi_formula, pi_k, pi_digits, pi_terms, pi_out, pi_unverified, out, err);
        }
        if (*bench) return cmd_bench(bench_k, bench_terms, bench_den, bench_rounding, bench_out, out, err);
        if (*sec) return cmd_solve_second(sec_alpha, sec_beta, out);
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return exit_code(ErrorKind::usage);
}

}  // namespace mlpi
