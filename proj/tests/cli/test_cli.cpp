#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ALGINT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        size_t start = 0;
        while (true) {
            size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("census CLI worked example: Q = 1 whole line") {
    RunResult r = run_cli("census --degree 2 --qmax 1 --bins whole");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n", "Q", "bin_lo", "bin_hi", "omega_count",
                                              "N1", "N2"});
    CHECK(rows[1] == std::vector<std::string>{"2", "1", "-2", "2", "4", "0", "2"});
    CHECK(rows[2] == std::vector<std::string>{"reducible_count", "irreducible_count"});
    CHECK(rows[3] == std::vector<std::string>{"4", "5"});
}

TEST_CASE("density CLI worked example: omega_2(1/10, 5) = 0.2") {
    RunResult r = run_cli("density --degree 2 --xi 1/10 --t 5 --method exact");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "xi", "t", "omega", "phi", "method", "err"});
    CHECK(rows[1][3] == "0.2");
    CHECK(rows[1][5] == "exact");
}

TEST_CASE("byte-identical output across runs and job counts") {
    std::string base = "census --degree 3 --qmax 2 --bins width:1/2";
    RunResult a = run_cli(base + " --jobs 1");
    RunResult b = run_cli(base + " --jobs 2");
    RunResult c = run_cli(base + " --jobs 2");
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);

    std::string mc = "density --degree 2 --xi 1/10 --t 3/2 --method mc --samples 50000 --seed 9";
    CHECK(run_cli(mc).out == run_cli(mc).out);

    std::string vr = "verify --check tworoot --samples 100000 --seed 3";
    RunResult v1 = run_cli(vr + " --jobs 1");
    RunResult v2 = run_cli(vr + " --jobs 2");
    CHECK(v1.out == v2.out);
}

TEST_CASE("CSV round trip: every emitted CSV parses into its documented schema") {
    struct Case {
        std::string args;
        std::vector<std::string> header;
    };
    std::vector<Case> cases = {
        {"density --degree 2 --xi 1/10 --t-grid 0:2:5",
         {"n", "xi", "t", "omega", "phi", "method", "err"}},
        {"profile --degree 3 --xi 1/25 --t-grid 0:10:4",
         {"n", "xi", "t", "omega", "phi", "absdiff", "regime", "bound"}},
        {"idiff --degree 2 --xi 1/25 --tol 1e-3", {"n", "xi", "value", "err"}},
        {"thresholds --degree 2 --xi 1/10", {"n", "xi", "kind", "name", "value"}},
        {"thresholds --degree 3 --xi 1/100", {"n", "xi", "kind", "name", "value"}},
        {"gaps --degree 2 --qmax 3 --x0 0 --x0 1/2", {"n", "Q", "x0", "distance", "approx"}},
        {"reducible --degree 2 --qmax 20",
         {"n", "Q", "reducible_count", "total_count", "normalizer", "ratio"}},
        {"verify --check section", {"check", "params", "measured", "reference", "pass"}},
    };
    for (const Case& c : cases) {
        RunResult r = run_cli(c.args);
        INFO(c.args);
        CHECK(r.exit_code == 0);
        auto rows = parse_csv(r.out);
        REQUIRE(rows.size() >= 2);
        CHECK(rows[0] == c.header);
        for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].size() == c.header.size());
    }
}

TEST_CASE("JSON mirror carries identical field names") {
    RunResult r = run_cli("census --degree 2 --qmax 1 --bins whole --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("rows"));
    REQUIRE(j["rows"].size() == 1);
    auto& row = j["rows"][0];
    for (const char* key : {"n", "Q", "bin_lo", "bin_hi", "omega_count", "N1", "N2"})
        CHECK(row.contains(key));
    CHECK(row["omega_count"] == 4);
    CHECK(j["summary"]["reducible_count"] == 4);
    CHECK(j["summary"]["irreducible_count"] == 5);

    RunResult d = run_cli("density --degree 2 --xi 1/10 --t 5 --format json");
    auto jd = nlohmann::json::parse(d.out);
    CHECK(jd["rows"][0]["omega"] == 0.2);
}

TEST_CASE("high degrees go through the MC kernel only") {
    RunResult mc = run_cli("density --degree 8 --xi 1/100 --t 2 --method mc "
                           "--samples 50000 --seed 3");
    CHECK(mc.exit_code == 0);
    RunResult exact = run_cli("density --degree 8 --xi 1/100 --t 2 --method exact");
    CHECK(exact.exit_code == 1);  // exact kernel caps at dimension 6
}

TEST_CASE("exit codes") {
    CHECK(run_cli("census --degree 9 --qmax 1").exit_code == 1);           // validation
    CHECK(run_cli("census").exit_code == 1);                               // missing required
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("census --degree 5 --qmax 100").exit_code == 2);        // budget
    CHECK(run_cli("density --degree 2 --xi 1/10").exit_code == 1);        // needs --t
    CHECK(run_cli("density --degree 2 --xi 1/10 --t 1 --method mc").exit_code == 1);  // no seed
    CHECK(run_cli("thresholds --degree 2 --xi 0.3").exit_code == 1);      // out of regime
    CHECK(run_cli("gaps --degree 2 --qmax 2 --x0 nonsense").exit_code == 1);
}

TEST_CASE("idiff worked example from the CLI") {
    RunResult r = run_cli("idiff --degree 2 --xi 0.04 --tol 1e-4");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    double value = std::stod(rows[1][2]);
    double err = std::stod(rows[1][3]);
    // closed-form asymptotic at xi = 0.04: 4 - 16/3 * 0.2 = 2.9333...
    CHECK(std::abs(value - 2.93333) <= 0.25 + err);
}

TEST_CASE("census residuals file") {
    std::string path = "/tmp/algint_test_residuals.csv";
    for (const char* args : {"census --degree 2 --qmax 10 --bins list:-3:3 --tol 1e-5",
                             "census --degree 3 --qmax 5 --bins list:-2:2 --tol 1e-4"}) {
        RunResult r = run_cli(std::string(args) + " --residuals-output " + path);
        CHECK(r.exit_code == 0);
        std::ifstream f(path);
        REQUIRE(f.good());
        std::stringstream ss;
        ss << f.rdbuf();
        auto rows = parse_csv(ss.str());
        REQUIRE(rows.size() == 2);
        CHECK(rows[0][0] == "n");
        CHECK(rows[0].size() == 10);
        CHECK(rows[1].size() == rows[0].size());
        std::remove(path.c_str());
    }
}
