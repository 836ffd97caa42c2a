#include "doctest.h"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(CINV_BINARY) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> c_values(const std::string& out) {
    auto j = nlohmann::json::parse(out);
    std::vector<std::string> v;
    for (const auto& e : j["invariants"]) v.push_back(e["c"]);
    return v;
}

} // namespace

TEST_CASE("cli: compute") {
    Run a3 = run("compute --series A --rank 3");
    REQUIRE(a3.status == 0);
    auto j = nlohmann::json::parse(a3.out);
    for (const char* key : {"algebra", "method", "invariants", "diagnostics"}) CHECK(j.contains(key));
    CHECK(j.size() == 4);
    CHECK(j["method"] == "symbol");
    CHECK(c_values(a3.out) == std::vector<std::string>(3, "1/24"));

    CHECK(run("compute --series C --rank 2 --format pretty").out == "C2 (symbol): 1/12, 1/24\n");
    CHECK(c_values(run("compute --algebra G2 --method dirac").out) == std::vector<std::string>{"1/8", "1/24"});
    CHECK(c_values(run("compute --algebra F4").out) == std::vector<std::string>{"1/24", "1/24", "1/12", "1/12"});
    CHECK(c_values(run("compute --series B --rank 3").out) == std::vector<std::string>{"1/12", "1/12", "1/6"});
    CHECK(c_values(run("compute --series D --rank 3 --seed 9").out) == std::vector<std::string>(3, "1/12"));
    CHECK(c_values(run("compute --series C --rank 2 --decimal 4").out) == std::vector<std::string>{"0.0833", "0.0417"});
    CHECK(run("compute --series C --rank 2 --format tsv").out.rfind("index\tlambda\tc\n", 0) == 0);
}

TEST_CASE("cli: output is byte-identical for a fixed seed") {
    for (const char* args : {"compute --series B --rank 4 --seed 5", "compute --algebra G2 --seed 3",
                             "compute --algebra F4 --seed 2", "table --check", "coeffs --series C --rank 2 --check"}) {
        CAPTURE(args);
        Run x = run(args), y = run(args);
        CHECK(x.status == 0);
        CHECK(x.out == y.out);
    }
    CHECK(run("compute --series A --rank 2 --seed 1").out != run("compute --series A --rank 2 --seed 2").out);
}

TEST_CASE("cli: exit codes") {
    CHECK(run("compute --algebra G2 --sample 2,0").status == 2);
    CHECK(run("compute --algebra G2 --fixtures /nonexistent-cinv").status == 3);
    CHECK(run("compute --algebra H4").status == 4);
    CHECK(run("compute --series D --rank 2").status == 4);
    CHECK(run("compute --series A --rank 2 --eps-order 2").status == 4);
    CHECK(run("compute --series A").status == 4);
    CHECK(run("compute --algebra E6 --method dirac").status == 4);
    CHECK(run("verify nosuch").status == 4);
    CHECK(run("table --fold B3 F4").status == 4);
    CHECK(run("--format xml compute --series A --rank 1").status == 4);
}

TEST_CASE("cli: fixture directory from the environment") {
    Run r = run("compute --algebra G2 --fixtures /nonexistent-cinv");
    CHECK(r.status == 3);
    std::string env = "CINV_FIXTURES=/nonexistent-cinv ";
    std::string cmd = env + CINV_BINARY + " compute --algebra G2 >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(st) == 3);
    std::string ok = env + CINV_BINARY + " compute --algebra G2 --fixtures " + CINV_TEST_DATA + " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
}

TEST_CASE("cli: table, coeffs and verify") {
    Run t = run("table --check --format tsv");
    CHECK(t.status == 0);
    CHECK(t.out.find("G2\t1/8\t1/24\n") != std::string::npos);
    CHECK(t.out.find("F4\t1/24\t1/24\t1/12\t1/12\n") != std::string::npos);
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 9);

    auto fold = nlohmann::json::parse(run("table --fold B3 G2").out);
    CHECK(fold["diagnostics"]["additive"] == true);

    for (const char* args : {"coeffs --series A --rank 2 --check", "coeffs --series B --rank 2 --check",
                             "coeffs --series D --rank 3 --check", "coeffs --series C --rank 3 --bracket 1 --check"}) {
        CAPTURE(args);
        Run c = run(std::string(args) + " --format pretty");
        CHECK(c.status == 0);
        CHECK(c.out.find("FAILED") == std::string::npos);
        CHECK(c.out.find("check ") != std::string::npos);
    }

    for (const char* suite : {"g2", "f4", "table", "frobenius", "properties"}) {
        CAPTURE(suite);
        Run v = run(std::string("verify ") + suite);
        CHECK(v.status == 0);
        CHECK(nlohmann::json::parse(v.out)["diagnostics"]["ok"] == true);
    }
}
