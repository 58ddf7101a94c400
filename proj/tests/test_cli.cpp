// Integration tests driving the installed command-line binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kBin = TMTLC_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

int counter = 0;

RunResult run(const std::string& args) {
    std::string outfile = "/tmp/tmtlc-cli-test-" + std::to_string(counter++) + ".out";
    std::string cmd = "TMTLC_CACHE_DIR=/tmp/tmtlc-cli-test-cache " + kBin + " " + args + " > " +
                      outfile + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(outfile);
    std::stringstream buf;
    buf << f.rdbuf();
    return {WEXITSTATUS(rc), buf.str()};
}

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("series emits the requested window") {
    auto r = run("series --P \"t+u\" --d 2 --domain Zu --N 16 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.stdout_text) == 17);  // header + 16 rows
    CHECK(r.stdout_text.find("16,u^4") != std::string::npos);
}

TEST_CASE("cf certifies the requested terms") {
    auto r = run("cf --u 2 --N 64 --terms 20 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.stdout_text) == 21);
    CHECK(r.stdout_text.find("2,2,t + 2,2") != std::string::npos);  // beta_2 = 2 at u = 2

    SUBCASE("too small a window exits with the precision code") {
        auto bad = run("cf --u 2 --N 10 --terms 20");
        CHECK(bad.exit_code == 3);
    }
}

TEST_CASE("tlc numeric at u = -1 reports the counterexample") {
    auto r = run("tlc numeric --u -1 --N 8 --format json");
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("\"verdict\": \"counterexample\"") != std::string::npos);
    CHECK(r.stdout_text.find("\"n\": 3") != std::string::npos);

    auto ok = run("tlc numeric --u 2 --N 12");
    CHECK(ok.exit_code == 0);

    auto usage = run("tlc numeric --u 1 --N 8");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("tlc symbolic emits the schema fields") {
    auto r = run("tlc symbolic --N 8 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"verdict\": \"symbolic-certificate\"") != std::string::npos);
    CHECK(r.stdout_text.find("coefficientTableHash") != std::string::npos);
}

TEST_CASE("tlc ffield finds and flags the counterexample") {
    auto r = run("tlc ffield --p 3 --u 2");
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("witness (4,1)") != std::string::npos);
}

TEST_CASE("verification suites are scriptable") {
    CHECK(run("verify prop2 --N 256").exit_code == 0);
    CHECK(run("verify prop3 --M 32").exit_code == 0);
    CHECK(run("verify mirror --M 6").exit_code == 0);
    CHECK(run("verify blocks --N 12").exit_code == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("bogus").exit_code == 2);
    CHECK(run("series --no-such-flag").exit_code == 2);
    CHECK(run("series --domain Q --N 4").exit_code == 2);       // missing --u
    CHECK(run("cf --domain Zu --u 2").exit_code == 2);          // not a field
    CHECK(run("series --domain Fp:8 --u 2 --N 4").exit_code == 2);  // composite modulus
}

TEST_CASE("data sections are deterministic across thread counts") {
    auto a = run("hankel --domain Zu --N 20 --no-cache --threads 1 --format csv");
    auto b = run("hankel --domain Zu --N 20 --no-cache --threads 8 --format csv");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(count_lines(a.stdout_text) > 1);
}

TEST_CASE("cache round trip through the CLI") {
    if (std::system("rm -rf /tmp/tmtlc-cli-test-cache") != 0)
        FAIL("could not clear cache directory");
    auto first = run("hankel --domain Q --u 3/5 --N 16 --format csv");
    auto second = run("hankel --domain Q --u 3/5 --N 16 --format csv");
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);
}
