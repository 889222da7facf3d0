#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "bniep/certificate.hpp"
#include "bniep/constructors.hpp"
#include "bniep/json_io.hpp"
#include "helpers.hpp"

using namespace bniep;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "bniep_cli_tests";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args, const std::string& prefix = "") {
    std::string cmd = prefix + std::string(BNIEP_CLI_PATH) + " " + args + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("matrix JSON round trip is lossless") {
    Matrix m(2, 2);
    m(0, 0) = 0.1;  // not exactly representable in decimal
    m(0, 1) = std::sqrt(2.0);
    m(1, 0) = 1e-300;
    m(1, 1) = 12345.6789;
    json j = matrix_to_json(m);
    CHECK(j["schema"] == 1);
    CHECK(j["order"] == 2);
    Matrix back = matrix_from_json(j);
    CHECK(bniep_test::max_entry_diff(m, back) == 0.0);

    // the serialized text itself round-trips bit-exactly
    Matrix again = matrix_from_json(json::parse(j.dump()));
    CHECK(bniep_test::max_entry_diff(m, again) == 0.0);

    CHECK_THROWS(matrix_from_json(json::parse(R"({"order":2,"entries":[1,2,3,4]})")));
    CHECK_THROWS(matrix_from_json(json::parse(R"({"schema":1,"order":2,"entries":[1,2,3]})")));
    CHECK_THROWS(matrix_from_json(json::parse(R"({"schema":2,"order":1,"entries":[1]})")));
}

TEST_CASE("certificate JSON round trip") {
    Construction c = construct_suleimanova(Spectrum{9, -2, -3, -4});
    json j = certificate_to_json(c.certificate);
    Certificate back = certificate_from_json(j);
    CHECK(back == c.certificate);
    CHECK(replay(back) == c.matrix);

    CHECK_THROWS(certificate_from_json(json::parse(R"({"params":{}})")));
}

TEST_CASE("text rendering aligns columns") {
    Matrix m(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = 10.0;
    m(1, 0) = 1.0;
    m(1, 1) = 2.0;
    CHECK(matrix_to_text(m) ==
          " 2.000000 10.000000\n"
          " 1.000000  2.000000\n");
    CHECK(matrix_to_text(m, 1) == " 2.0 10.0\n 1.0  2.0\n");
}

TEST_CASE("construct subcommand emits a verified realization") {
    fs::path out = scratch_dir() / "construct.json";
    int code = run_cli("construct --spectrum 9,2,-1,-2,-3,-4 --format json --output " +
                       out.string());
    CHECK(code == 0);
    json j = json::parse(slurp(out));
    CHECK(j["schema"] == 1);
    CHECK(j["matrix"]["order"] == 6);
    CHECK(j["report"]["pass"] == true);
    Matrix m = matrix_from_json(j["matrix"]);
    CHECK(bniep_test::spectrum_deviation(m, {9, 2, -1, -2, -3, -4}) < 1e-9);
    Certificate cert = certificate_from_json(j["certificate"]);
    CHECK(replay(cert).matrix() == m);
}

TEST_CASE("construct reports infeasibility with exit code 2") {
    CHECK(run_cli("construct --spectrum 6,6,-2,-3,-3,-4") == 2);
    CHECK(run_cli("check --spectrum 6,6,-2,-3,-3,-4 --output /dev/null") == 2);
    CHECK(run_cli("check --spectrum 9,2,-1,-2,-3,-4 --output /dev/null") == 0);
}

TEST_CASE("verify subcommand") {
    fs::path mfile = scratch_dir() / "m.json";
    {
        Matrix m(2, 2);
        m(0, 0) = m(1, 1) = 2.0;
        m(0, 1) = m(1, 0) = 1.0;
        std::ofstream f(mfile);
        f << matrix_to_json(m).dump();
    }
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,1") == 0);
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,0.9") == 2);
    // a generous tolerance flips the verdict
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,0.9 --tol 0.5") == 0);
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,0.9",
                  "BNIEP_TOL=0.5 ") == 0);
    // an explicit flag beats the environment
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,0.9 --tol 1e-9",
                  "BNIEP_TOL=0.5 ") == 2);
    CHECK(run_cli("verify --matrix " + mfile.string() + " --spectrum 3,1",
                  "BNIEP_TOL=bogus ") == 1);
    CHECK(run_cli("verify --matrix " + (scratch_dir() / "missing.json").string() +
                  " --spectrum 3,1") == 1);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("construct --spectrum 1,,2") == 1);
    CHECK(run_cli("construct --spectrum 3,1 --strategy bogus") == 1);
    CHECK(run_cli("construct") == 1);
    CHECK(run_cli("bogus-subcommand") == 1);
    CHECK(run_cli("construct --spectrum 3,1 --format yaml") == 1);
    CHECK(run_cli("construct --spectrum 9,-5 --strategy soto") == 1);  // --blocks missing
    CHECK(run_cli("construct --spectrum 9,-5 --strategy diagonal") == 1);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("strategy-specific paths through the command line") {
    fs::path out = scratch_dir() / "strategy.json";
    CHECK(run_cli("construct --spectrum 9,2,-1,-2,-3,-4 --strategy borobia "
                  "--partition='-2,-3,-4|-1' --format json --output " +
                  out.string()) == 0);
    json j = json::parse(slurp(out));
    CHECK(j["certificate"]["kind"] == "borobia-3.4");

    CHECK(run_cli("construct --spectrum 8,1,-1 --strategy diagonal --diag 4,2 "
                  "--output /dev/null") == 0);
    CHECK(run_cli("construct --spectrum 9,-2,-3,-4 --strategy suleimanova "
                  "--output /dev/null") == 0);
    CHECK(run_cli("construct --spectrum 3,1,-1,-2 --strategy small --output /dev/null") == 0);
    CHECK(run_cli("construct --spectrum 2,-1 --strategy positive --output /dev/null") == 0);
    CHECK(run_cli("construct --spectrum 5,-1,-2 --strategy soto "
                  "--blocks='5,-1,-2@5' --output /dev/null") == 0);
}

TEST_CASE("identical invocations produce byte-identical output") {
    fs::path a = scratch_dir() / "run_a.json";
    fs::path b = scratch_dir() / "run_b.json";
    const std::string args = "construct --spectrum 9,2,-1,-2,-3,-4 --format json --output ";
    REQUIRE(run_cli(args + a.string()) == 0);
    REQUIRE(run_cli(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}
