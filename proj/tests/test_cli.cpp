#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

// Runs the installed binary with stderr dropped; captures stdout and the
// exit code.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QSCAN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("scan csv output matches the golden file byte for byte") {
    const auto r = run_cli("scan --p-max 160 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == read_file(std::string(QSCAN_GOLDEN_DIR) + "/scan_p160.csv"));
}

TEST_CASE("scan text output") {
    const auto r = run_cli("scan --p-max 160");
    CHECK(r.code == 0);
    CHECK(r.out.find("p=37 v=2 a2=32\n") != std::string::npos);
    CHECK(r.out.find("p=157 v=5 a2=62\n") != std::string::npos);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 9);
}

TEST_CASE("scan json round trip") {
    const auto r = run_cli("scan --p-max 160 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 9);
    CHECK(j[0]["p"] == 37);
    CHECK(j[0]["v"] == 2);
    CHECK(j[0]["k"] == 5);
    CHECK(j[0]["a2"] == 32);
    CHECK(j[0]["mu"] == 32);
    CHECK(j[7]["p"] == 157);
    CHECK(j[7]["a2"] == 110);
    CHECK(j[8]["a2"] == 62);
}

TEST_CASE("scan with no hits emits only the header") {
    const auto r = run_cli("scan --p-max 31 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == "p,v,a2\n");
}

TEST_CASE("jobs flag and environment leave the bytes unchanged") {
    const auto base = run_cli("scan --p-max 400 --format csv");
    CHECK(base.code == 0);
    const auto j4 = run_cli("scan --p-max 400 --format csv --jobs 4");
    CHECK(j4.code == 0);
    CHECK(j4.out == base.out);
    // Environment default
    const std::string cmd = std::string("env QSCAN_JOBS=4 ") + QSCAN_CLI_PATH
                            + " scan --p-max 400 --format csv 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    CHECK(out == base.out);
}

TEST_CASE("crosscheck reports ok") {
    const auto r = run_cli("crosscheck --p-max 160");
    CHECK(r.code == 0);
    CHECK(r.out.find("crosscheck p_max=160 primes=35 mismatches=0\n") != std::string::npos);
    CHECK(r.out.find("ok\n") != std::string::npos);

    const auto rj = run_cli("crosscheck --p-max 160 --format json");
    CHECK(rj.code == 0);
    const auto j = nlohmann::json::parse(rj.out);
    CHECK(j["ok"] == true);
    CHECK(j["primes_checked"] == 35);
    CHECK(j["mismatches"].empty());
}

TEST_CASE("certify exit codes carry the verdict") {
    const auto regular = run_cli("certify --p 13");
    CHECK(regular.code == 0);
    CHECK(regular.out.find("p=13 v=2 verdict=regular-certified\n") != std::string::npos);

    const auto irregular = run_cli("certify --p 37");
    CHECK(irregular.code == 3);
    CHECK(irregular.out.find("p=37 v=2 verdict=irregular\n") != std::string::npos);
    CHECK(irregular.out.find("hit k=5 a2=32 mu=32\n") != std::string::npos);
    CHECK(irregular.out.find("stray_roots=17\n") != std::string::npos);

    CHECK(run_cli("certify --p 9").code == 2);
    CHECK(run_cli("certify --p 4").code == 2);
}

TEST_CASE("certify json lists both 157 hits in k order") {
    const auto r = run_cli("certify --p 157 --format json");
    CHECK(r.code == 3);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 157);
    CHECK(j["v"] == 5);
    CHECK(j["verdict"] == "irregular");
    REQUIRE(j["hits"].size() == 2);
    CHECK(j["hits"][0]["a2"] == 110);
    CHECK(j["hits"][0]["k"] == 47);
    CHECK(j["hits"][1]["a2"] == 62);
    CHECK(j["hits"][1]["k"] == 95);
    CHECK(j["stray_roots"].size() == 77);   // (157-3)/2
}

TEST_CASE("gauss split run passes all checks") {
    const auto r = run_cli("gauss --p 5 --q 11");
    CHECK(r.code == 0);
    CHECK(r.out.find("gauss p=5 q=11 case=split f=1 u=2 w=4\n") != std::string::npos);
    CHECK(r.out.find("rho=1\n") != std::string::npos);
    CHECK(r.out.find("stickelberger valuations: 1 2 3 4\n") != std::string::npos);
    CHECK(r.out.find("all hard checks passed\n") != std::string::npos);

    const auto rj = run_cli("gauss --p 5 --q 11 --format json");
    CHECK(rj.code == 0);
    const auto j = nlohmann::json::parse(rj.out);
    CHECK(j["rho"] == 1);
    CHECK(j["vpi_g_plus_1"] == 5);
    CHECK(j["vpi_g_minus_1"] == 0);
    CHECK(j["norm_ok"] == true);
    CHECK(j["stickelberger"]["valuations"] == nlohmann::json::array({1, 2, 3, 4}));
    CHECK(j["structure"]["g1_is_one"] == true);
    CHECK(j["structure"]["rho_matches_minus_v"] == false);
}

TEST_CASE("gauss nonsplit run") {
    const auto r = run_cli("gauss --p 3 --q 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("gauss p=3 q=5 case=nonsplit f=2\n") != std::string::npos);
    CHECK(r.out.find("g in Z[zeta_p]: pass\n") != std::string::npos);
    CHECK(r.out.find("all hard checks passed\n") != std::string::npos);
}

TEST_CASE("gauss rejects equal or non-prime arguments") {
    CHECK(run_cli("gauss --p 5 --q 5").code == 2);
    CHECK(run_cli("gauss --p 4 --q 11").code == 2);
    CHECK(run_cli("gauss --p 5 --q 12").code == 2);
}

TEST_CASE("gauss skip flags suppress the later stages") {
    const auto r = run_cli("gauss --p 5 --q 11 --skip-power");
    CHECK(r.code == 0);
    CHECK(r.out.find("v_pi") == std::string::npos);
    CHECK(r.out.find("stickelberger") == std::string::npos);
    const auto r2 = run_cli("gauss --p 5 --q 11 --skip-stickelberger --skip-norm");
    CHECK(r2.code == 0);
    CHECK(r2.out.find("v_pi(G-1)=0 v_pi(G+1)=5\n") != std::string::npos);
    CHECK(r2.out.find("stickelberger") == std::string::npos);
    CHECK(r2.out.find("|N(G)|") == std::string::npos);
}

TEST_CASE("bernoulli output formats") {
    const auto r = run_cli("bernoulli --p 7 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == "n,value\n0,1\n1,3\n2,6\n3,0\n4,3\n");

    const auto rj = run_cli("bernoulli --p 7 --format json");
    CHECK(rj.code == 0);
    const auto j = nlohmann::json::parse(rj.out);
    CHECK(j["p"] == 7);
    CHECK(j["values"] == nlohmann::json::array({1, 3, 6, 0, 3}));

    CHECK(run_cli("bernoulli --p 4").code == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("scan").code == 2);                  // missing --p-max
    CHECK(run_cli("scan --p-max 4").code == 2);
    CHECK(run_cli("scan --p-max 100 --format yaml").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("certify").code == 2);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("scan --help").code == 0);
}

TEST_CASE("repeated runs are byte identical") {
    const auto a = run_cli("scan --p-max 160 --format csv");
    const auto b = run_cli("scan --p-max 160 --format csv");
    CHECK(a.out == b.out);
    const auto g1 = run_cli("gauss --p 7 --q 29");
    const auto g2 = run_cli("gauss --p 7 --q 29");
    CHECK(g1.out == g2.out);
    CHECK(g1.code == 0);
}
