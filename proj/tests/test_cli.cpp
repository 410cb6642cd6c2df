#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "floorset/asym.hpp"
#include "floorset/exact.hpp"
#include "floorset/format.hpp"

using namespace floorset;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr dropped unless a capture path is supplied.
CliResult run_cli(const std::string& args, const std::string& stderr_path = "") {
    std::string cmd = std::string(FLOORSET_CLI_PATH) + " " + args + " 2>" +
                      (stderr_path.empty() ? "/dev/null" : stderr_path);
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("floorset_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli computes the documented examples", "[cli]") {
    CHECK(run_cli("pi-s --x 100").out == "5\n");
    CHECK(run_cli("coeffs --n 1").out == "4\n");
    CHECK(run_cli("coeffs --n 3").out == "4\n0\n32\n");
    CHECK(run_cli("s-count --f prime --x 10").out == "4\n");
    CHECK(run_cli("cardinality --x 100").out == "19\n");
    CHECK(run_cli("progression --x 100 --q 2 --a 1").out == "8\n");
    CHECK(run_cli("s-count --f one --x 12345").out == "12345\n");
}

TEST_CASE("cli output equals the library call at full precision", "[cli]") {
    CHECK(run_cli("s-count --f lambda --x 10").out ==
          format_double(floor_sum(10, WeightFn::lambda).real_value) + "\n");
    CHECK(run_cli("li --x 1000000").out == format_double(li(1e6)) + "\n");
    CHECK(run_cli("lis --x 100000000").out == format_double(li_S(1e8)) + "\n");

    auto constants = run_cli("constants --f prime --tol 1e-5");
    CHECK(constants.exit_code == 0);
    std::istringstream tokens(constants.out);
    double lower = 0, upper = 0;
    uint64_t cutoff = 0;
    tokens >> lower >> upper >> cutoff;
    CHECK(lower <= 0.330229926264203241);
    CHECK(upper >= 0.330229926264203241);
    CHECK(cutoff == 100000);
}

TEST_CASE("cli psisum and remainder", "[cli]") {
    auto psisum = run_cli("psisum --x 100 --d-lo 10 --d-hi 20 --delta 0 --weight prime");
    REQUIRE(psisum.exit_code == 0);
    std::istringstream tokens(psisum.out);
    double value = 0;
    uint64_t terms = 0;
    tokens >> value >> terms;
    CHECK(value == Catch::Approx(-0.0712723808699040897).margin(1e-15));
    CHECK(terms == 4);

    auto rem = run_cli("remainder --x 1000000 --n-param 1000 --delta 0 --f prime");
    CHECK(rem.exit_code == 0);
    CHECK(rem.out == "0 0 1000 0\n");
}

TEST_CASE("cli exit codes", "[cli]") {
    CHECK(run_cli("pi-s --x 100").exit_code == 0);
    CHECK(run_cli("pi-s").exit_code == 2);                    // missing required flag
    CHECK(run_cli("pi-s --x 100 --bogus 1").exit_code == 2);  // unknown flag
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);                        // subcommand required
    CHECK(run_cli("pi-s --x 0").exit_code == 1);              // domain error at runtime
    CHECK(run_cli("remainder --x 1000000 --n-param 10 --delta 0 --f prime").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli floors real x with a note", "[cli]") {
    std::string err_path = temp_path("floor_note.txt");
    auto result = run_cli("pi-s --x 100.9", err_path);
    CHECK(result.exit_code == 0);
    CHECK(result.out == "5\n");
    CHECK(slurp(err_path).find("floored") != std::string::npos);
    std::filesystem::remove(err_path);

    // Scientific notation for an integral value: accepted, no note.
    std::string err2 = temp_path("sci_note.txt");
    auto sci = run_cli("pi-s --x 1e2", err2);
    CHECK(sci.exit_code == 0);
    CHECK(sci.out == "5\n");
    CHECK(slurp(err2).empty());
    std::filesystem::remove(err2);
}

TEST_CASE("cli lis below 4 warns and reports 0", "[cli]") {
    std::string err_path = temp_path("lis_warn.txt");
    auto result = run_cli("lis --x 2", err_path);
    CHECK(result.exit_code == 0);
    CHECK(result.out == "0\n");
    CHECK(slurp(err_path).find("warning") != std::string::npos);
    std::filesystem::remove(err_path);
}

TEST_CASE("cli verify runs the oracle suite", "[cli]") {
    auto result = run_cli("verify --max-x 300 --random 5 --random-max 20000");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("OK") != std::string::npos);
}

TEST_CASE("cli scan output is byte-identical across thread counts", "[cli]") {
    std::string a = temp_path("scan_t1.csv"), b = temp_path("scan_t8.csv");
    CHECK(run_cli("--threads 1 scan --quantity s-lambda --from 16 --to 100000 --points 7 "
                  "--ctol 1e-5 --format csv --out " + a).exit_code == 0);
    CHECK(run_cli("--threads 8 scan --quantity s-lambda --from 16 --to 100000 --points 7 "
                  "--ctol 1e-5 --format csv --out " + b).exit_code == 0);
    std::string csv1 = slurp(a), csv2 = slurp(b);
    CHECK(!csv1.empty());
    CHECK(csv1 == csv2);

    // fit consumes the emitted csv
    auto fit = run_cli("fit --input " + a);
    CHECK(fit.exit_code == 0);
    std::istringstream tokens(fit.out);
    double slope = 0, intercept = 0, r2 = 0;
    int used = 0, excluded = 0;
    tokens >> slope >> intercept >> r2 >> used >> excluded;
    CHECK(used + excluded == 7);

    std::string ja = temp_path("scan_t1.json"), jb = temp_path("scan_t8.json");
    CHECK(run_cli("--threads 1 scan --quantity pi-s --from 16 --to 100000 --points 7 "
                  "--format json --out " + ja).exit_code == 0);
    CHECK(run_cli("--threads 8 scan --quantity pi-s --from 16 --to 100000 --points 7 "
                  "--format json --out " + jb).exit_code == 0);
    CHECK(!slurp(ja).empty());
    CHECK(slurp(ja) == slurp(jb));

    for (const auto& p : {a, b, ja, jb}) std::filesystem::remove(p);
}
