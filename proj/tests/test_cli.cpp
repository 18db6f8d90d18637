#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilspec/pair_spec.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* cli_path() {
    const char* p = std::getenv("NILSPEC_CLI");
    REQUIRE_MESSAGE(p != nullptr, "NILSPEC_CLI must point at the CLI binary");
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > cli_out.tmp 2> cli_err.tmp";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = status < 0 ? -1 : WEXITSTATUS(status);
    r.out = slurp("cli_out.tmp");
    r.err = slurp("cli_err.tmp");
    std::remove("cli_out.tmp");
    std::remove("cli_err.tmp");
    return r;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").code == 0);
    CHECK(run("eigentable --help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("no-such-subcommand").code == 2);
    CHECK(run("eigentable --no-such-flag 1").code == 2);
    CHECK(run("converge --regime bogus").code == 2);
    CHECK(run("converge --regime I-I --schedule linear").code == 2);
    CHECK(run("eigentable --pair no-such-pair-anywhere").code == 2);
}

TEST_CASE("pair validate: builtins pass, corrupt files fail, bad schema is usage") {
    {
        const RunResult r = run("pair validate --pair u2su2");
        CHECK(r.code == 0);
        CHECK(r.out.find("fail") == std::string::npos);
        CHECK(r.out.find("pass") != std::string::npos);
    }
    {
        const RunResult r = run("pair validate --pair heisenberg-u3 --format json");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"ok\": true") != std::string::npos);
    }
    {
        nilspec::PairSpec bad = nilspec::builtin_heisenberg_un(1);
        for (auto& a : bad.A) a *= nilspec::Rat(2);
        nilspec::save_pair(bad, "bad_pair.tmp.json");
        const RunResult r = run("pair validate --pair bad_pair.tmp.json");
        CHECK(r.code == 1);
        CHECK(r.out.find("fail") != std::string::npos);
        std::remove("bad_pair.tmp.json");
    }
    {
        std::ofstream f("broken.tmp.json");
        f << "{\"format\": 1, \"name\": \"x\"}";
        f.close();
        const RunResult r = run("pair validate --pair broken.tmp.json");
        CHECK(r.code == 2);
        std::remove("broken.tmp.json");
    }
}

TEST_CASE("eigentable: frozen row, exact json, empty grid, bad lambda") {
    {
        const RunResult r = run("eigentable --pair u2su2 --lambda 1 --mmax 1");
        CHECK(r.code == 0);
        CHECK(r.out.rfind("lambda,m1,m2,m3,D0,D1,D2,D3\n", 0) == 0);
        CHECK(r.out.find("\n1,0,0,1,1,-4,8,0\n") != std::string::npos);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);  // header + 2^3 rows
    }
    {
        const RunResult r = run("eigentable --pair u2su2 --lambda 1/2 --mmax 1 --format json");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"lambda\": \"1/2\"") != std::string::npos);
        // exact rationals: D1 at m=(0,0,1) is -2*(1/2)*2 = -2, D2 = 4*(1/4)*1*2 = 2
        CHECK(r.out.find("\"values\": [\"1/4\", \"-2\", \"2\", \"0\"]") != std::string::npos);
    }
    {
        const RunResult r = run("eigentable --pair heisenberg-u1 --lambda 1 --mmax 5");
        CHECK(r.code == 0);
        for (const char* line : {"\n1,0,1,0\n", "\n1,1,1,-2\n", "\n1,2,1,-4\n"})
            CHECK(r.out.find(line) != std::string::npos);
    }
    {
        const RunResult r = run("eigentable --pair u2su2 --mmax -1");
        CHECK(r.code == 0);
        CHECK(r.out == "lambda,m1,m2,m3,D0,D1,D2,D3\n");
    }
    CHECK(run("eigentable --pair u2su2 --lambda 0").code == 2);
    CHECK(run("eigentable --pair u2su2 --lambda -1/2").code == 2);
    CHECK(run("eigentable --pair u2su2 --lambda x/y").code == 2);
}

TEST_CASE("spherical-point: report fields, determinism, bad m is usage") {
    {
        const RunResult a = run("spherical-point --pair u2su2 --m 1,1,1 --seed 7");
        CHECK(a.code == 0);
        CHECK(a.out.find("well_adapted,true") != std::string::npos);
        CHECK(a.out.find("norm2,8.0000000") != std::string::npos);  // 2 deg h_m = 8
        const RunResult b = run("spherical-point --pair u2su2 --m 1,1,1 --seed 7");
        CHECK(a.out == b.out);
        const RunResult c = run("spherical-point --pair u2su2 --m 1,1,1 --seed 8");
        CHECK(c.code == 0);  // different seed still converges
    }
    CHECK(run("spherical-point --pair u2su2 --m 1,1").code == 2);
    CHECK(run("spherical-point --pair u2su2 --m 1,-1,1").code == 2);
    CHECK(run("spherical-point --pair u2su2 --m x").code == 2);
    CHECK(run("spherical-point --pair u2su2").code == 2);  // --m required
}

TEST_CASE("verify: fast suites pass on builtins, corrupted pair names the generator") {
    {
        const RunResult r = run("verify --pair u2su2 --suite invariance,scaling,type2");
        CHECK(r.code == 0);
        CHECK(r.out.find("fail") == std::string::npos);
    }
    {
        const RunResult r = run("verify --pair heisenberg-u2 --suite invariance,well-adapted");
        CHECK(r.code == 0);
    }
    {
        nilspec::PairSpec bad = nilspec::builtin_u2su2();
        nilspec::Mono e(static_cast<std::size_t>(bad.space.total()), 0);
        e[static_cast<std::size_t>(bad.space.v(0))] = 1;
        e[static_cast<std::size_t>(bad.space.w(1))] = 1;
        bad.invariants[1].poly.add_term(e, nilspec::Scalar(nilspec::Rat(1)));
        nilspec::save_pair(bad, "noninv_pair.tmp.json");
        const RunResult r = run("verify --pair noninv_pair.tmp.json --suite invariance");
        CHECK(r.code == 1);
        CHECK(r.out.find("generator") != std::string::npos);
        std::remove("noninv_pair.tmp.json");
    }
    CHECK(run("verify --pair u2su2 --suite no-such-suite").code == 2);
}

TEST_CASE("embed: both parameter types, conflicting flags rejected") {
    {
        const RunResult r = run("embed --pair u2su2 --m 1,1,1 --lambda 2");
        CHECK(r.code == 0);
        CHECK(r.out.rfind("component,phi,signature\n", 0) == 0);
        // D0 = lambda^2 = 4 on the phi side, p0 = lambda^2 = 4 on the orbit side
        CHECK(r.out.find("p0,4,4\n") != std::string::npos);
    }
    {
        const RunResult r =
            run("embed --pair u2su2 --b 0.3:0.1,-0.2:0.5,0.7,0.1:-0.4 --format json");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"type\": \"II\"") != std::string::npos);
        CHECK(r.out.find("\"phi\": [0, ") != std::string::npos);  // central value exactly 0
    }
    CHECK(run("embed --pair u2su2 --m 1,1,1 --b 1,0,0,0").code == 2);
    CHECK(run("embed --pair u2su2").code == 2);
    CHECK(run("embed --pair u2su2 --b 1,0").code == 2);  // wrong dimension
}

TEST_CASE("converge: verdict-driven exit codes and byte-identical reruns") {
    {
        const RunResult r = run("converge --pair u2su2 --regime II-II --n 1000 --out conv_ii");
        CHECK(r.code == 0);
        const std::string csv = slurp("conv_ii.csv");
        const std::string json = slurp("conv_ii.json");
        CHECK(csv.rfind("n,lambda,m1,m2,m3,d_phi,d_psi\n", 0) == 0);
        CHECK(json.find("\"verdict\": \"co-convergent\"") != std::string::npos);

        const RunResult again =
            run("converge --pair u2su2 --regime II-II --n 1000 --out conv_ii2");
        CHECK(again.code == 0);
        CHECK(slurp("conv_ii2.csv") == csv);
        CHECK(slurp("conv_ii2.json") == json);
        for (const char* p : {"conv_ii.csv", "conv_ii.json", "conv_ii2.csv", "conv_ii2.json"})
            std::remove(p);
    }
    {
        const RunResult r = run("converge --pair heisenberg-u1 --regime I-II --n 1000");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"verdict\": \"co-convergent\"") != std::string::npos);
    }
    {
        // I-I at the strict n=1000 checkpoint: honest failure, exit 1, report still emitted
        const RunResult r = run("converge --pair u2su2 --regime I-I --n 1000 --out conv_ii_fail");
        CHECK(r.code == 1);
        const std::string json = slurp("conv_ii_fail.json");
        CHECK(json.find("\"verdict\": \"fail: d_phi or d_psi above tolerance at the checkpoint\"") !=
              std::string::npos);
        for (const char* p : {"conv_ii_fail.csv", "conv_ii_fail.json"}) std::remove(p);
    }
    {
        const RunResult r = run("converge --pair u2su2 --regime I-I --schedule oscillating-m --n 40");
        CHECK(r.code == 1);
        CHECK(r.out.find("\"verdict\": \"regime-violation\"") != std::string::npos);
    }
}
