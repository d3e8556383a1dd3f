#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mlpi/cli.hpp"
#include "mlpi/record.hpp"

using namespace mlpi;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct Workdir {
    fs::path path;
    Workdir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("mlpi_cli_" + std::to_string(rd()));
        fs::create_directories(path);
        setenv(kWorkdirEnv, path.c_str(), 1);
    }
    ~Workdir() {
        unsetenv(kWorkdirEnv);
        fs::remove_all(path);
    }
};

const char* kPi100 =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

}  // namespace

TEST_CASE("generate and verify") {
    Workdir wd;
    Run g = run({"generate", "3"});
    CHECK(g.code == 0);
    CHECK(g.out.find("u2            -239\n") != std::string::npos);
    CHECK(g.out.find("verified      true") != std::string::npos);
    REQUIRE(fs::exists(wd.path / "k3.json"));

    Run g2 = run({"generate", "2", "--den", "10", "--out", "machin.json"});
    CHECK(g2.code == 0);
    CHECK(g2.out.find("u1            12/5") != std::string::npos);

    Run v = run({"verify", "k3.json"});
    CHECK(v.code == 0);
    CHECK(v.out.rfind("ok:", 0) == 0);

    CHECK(run({"generate", "2"}).code == 2);
    CHECK(run({"generate", "10", "--rounding", "floor", "--out", "k10.json"}).code == 0);
    FormulaRecord r = read_record(wd.path / "k10.json");
    CHECK(r.u1 == BigRational(651));
}

TEST_CASE("verify failures") {
    Workdir wd;
    REQUIRE(run({"generate", "3"}).code == 0);
    const fs::path p = wd.path / "k3.json";
    const std::string text = read_file(p);

    nlohmann::json j = nlohmann::json::parse(text);
    j["u2"]["num"] = "-240";
    std::ofstream(p) << j.dump(2);
    CHECK(run({"verify", "k3.json"}).code == 4);
    CHECK(run({"compute-pi", "--formula", "k3.json", "--digits", "10"}).code == 4);
    Run forced = run({"compute-pi", "--formula", "k3.json", "--digits", "3", "--allow-unverified"});
    CHECK(forced.code != 4);

    j = nlohmann::json::parse(text);
    j["u2_digit_counts"]["num_digits"] = 4;
    std::ofstream(p) << j.dump(2);
    CHECK(run({"verify", "k3.json"}).code == 7);

    std::ofstream(p) << "{\"schema_version\": 1,";
    CHECK(run({"verify", "k3.json"}).code == 3);
    CHECK(run({"verify", "missing.json"}).code == 3);
}

TEST_CASE("compute-pi") {
    Workdir wd;
    REQUIRE(run({"generate", "3", "--out", "machin.json"}).code == 0);
    REQUIRE(run({"generate", "10", "--rounding", "floor", "--out", "k10.json"}).code == 0);
    Run a = run({"compute-pi", "--formula", "k10.json", "--digits", "100"});
    Run b = run({"compute-pi", "--formula", "machin.json", "--digits", "100", "--out", "pi.txt"});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out == std::string(kPi100) + "\n");
    CHECK(a.out == b.out);
    CHECK(read_file(wd.path / "pi.txt") == b.out);
    CHECK(a.err.find("terms used:") != std::string::npos);

    Run e = run({"compute-pi", "--k", "40", "--digits", "100"});
    CHECK(e.code == 0);
    CHECK(e.out == a.out);

    Run t = run({"compute-pi", "--formula", "machin.json", "--terms", "10"});
    CHECK(t.code == 0);
    CHECK(std::string(kPi100).rfind(t.out.substr(0, t.out.size() - 1), 0) == 0);
    CHECK(t.out.size() > 15);

    CHECK(run({"compute-pi", "--k", "3", "--digits", "0"}).code == 2);
    CHECK(run({"compute-pi", "--k", "3"}).code == 2);
    CHECK(run({"compute-pi", "--k", "3", "--formula", "k10.json", "--digits", "5"}).code == 2);
    CHECK(run({"compute-pi", "--k", "3", "--digits", "5", "--terms", "5"}).code == 2);
}

TEST_CASE("bench") {
    Workdir wd;
    Run b = run({"bench", "--k", "2,3,5,10", "--max-terms", "20", "--out-dir", "rep"});
    CHECK(b.code == 0);
    REQUIRE(fs::exists(wd.path / "rep" / "bench.json"));
    REQUIRE(fs::exists(wd.path / "rep" / "bench.txt"));
    CHECK(read_file(wd.path / "rep" / "bench.txt") == b.out);
    nlohmann::json j = nlohmann::json::parse(read_file(wd.path / "rep" / "bench.json"));
    REQUIRE(j.size() == 4);
    CHECK(j[3]["k"] == 10);
    CHECK(j[3]["u1"]["num"].is_string());
    CHECK(j[3]["slope_defined"] == true);
    CHECK(j[3]["samples"].size() == 20);

    Run short_run = run({"bench", "--k", "3", "--max-terms", "3", "--out-dir", "rep2"});
    CHECK(short_run.code == 0);
    CHECK(short_run.out.find("slope undefined") != std::string::npos);

    CHECK(run({"bench", "--k", "3,x", "--max-terms", "5"}).code == 2);
    CHECK(run({"bench", "--k", "3", "--max-terms", "0"}).code == 2);
}

TEST_CASE("solve-second") {
    Run r = run({"solve-second", "--alpha1", "7", "--beta1", "1000000000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("beta2 = 1000000006999999978999999965000000035000000020999999992999999999/"
                     "999999992999999979000000035000000034999999978999999993000000001\n") == 0);
    CHECK(r.out.find("head  = 1.00000001400000009800") != std::string::npos);
    CHECK(run({"solve-second", "--alpha1", "2", "--beta1", "2"}).out.rfind("beta2 = -7\n", 0) == 0);
    CHECK(run({"solve-second", "--alpha1", "1", "--beta1", "1"}).code == 6);
    CHECK(run({"solve-second", "--alpha1", "1", "--beta1", "1/0"}).code == 3);
    CHECK(run({"solve-second", "--alpha1", "1"}).code == 2);
}

TEST_CASE("usage") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("primary output is deterministic") {
    Workdir wd;
    const std::vector<std::vector<std::string>> cmds = {
        {"generate", "5", "--den", "10"},
        {"compute-pi", "--k", "17", "--digits", "60"},
        {"solve-second", "--alpha1", "3", "--beta1", "57/4"},
        {"bench", "--k", "3,5", "--max-terms", "8"},
    };
    for (const auto& c : cmds) {
        Run a = run(c);
        Run b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    REQUIRE(run({"generate", "5", "--den", "10", "--out", "a.json"}).code == 0);
    REQUIRE(run({"generate", "5", "--den", "10", "--out", "b.json"}).code == 0);
    CHECK(read_file(wd.path / "a.json") == read_file(wd.path / "b.json"));
}
