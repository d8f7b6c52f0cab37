#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "openxxz/cli.hpp"

using namespace openxxz;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("configuration validation") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::VerifyAxioms;
    cfg.N = 0;
    cfg.output_path = "/tmp/openxxz_test_invalid.txt";
    CHECK(run(cfg) == 2);
    cfg.N = 7;
    CHECK(run(cfg) == 2);
    cfg.N = 2;
    cfg.trials = 0;
    CHECK(run(cfg) == 2);
}

TEST_CASE("verify-axioms run") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::VerifyAxioms;
    cfg.N = 3;
    cfg.seed = 7;
    cfg.output_path = "/tmp/openxxz_test_axioms.txt";
    CHECK(run(cfg) == 0);
    const std::string rep = slurp(cfg.output_path);
    CHECK(rep.find("overall_pass 1") != std::string::npos);
    // six check families
    for (const char* name :
         {"ybe_max_residual", "reflection_max_residual", "dual_reflection_max_residual",
          "commutator_max_residual", "crossing_max_residual", "transfer_vs_direct"})
        CHECK(rep.find(name) != std::string::npos);
    CHECK(rep.find("schema_version 1") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::ScalarProduct;
    cfg.N = 1;
    cfg.trials = 4;
    cfg.seed = 11;
    cfg.output_path = "/tmp/openxxz_test_repro_a.txt";
    CHECK(run(cfg) == 0);
    cfg.output_path = "/tmp/openxxz_test_repro_b.txt";
    CHECK(run(cfg) == 0);
    CHECK(slurp("/tmp/openxxz_test_repro_a.txt") == slurp("/tmp/openxxz_test_repro_b.txt"));
}

TEST_CASE("solve run emits root records") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::Solve;
    cfg.N = 1;
    cfg.seed = 5;
    cfg.output_path = "/tmp/openxxz_test_solve.txt";
    CHECK(run(cfg) == 0);
    const std::string rep = slurp(cfg.output_path);
    CHECK(rep.find("state 0") != std::string::npos);
    CHECK(rep.find("state 1") != std::string::npos);
    CHECK(rep.find("root_1_re") != std::string::npos);
    CHECK(rep.find("onshell 1") != std::string::npos);
}

TEST_CASE("scalar-product run records trials") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::ScalarProduct;
    cfg.N = 2;
    cfg.trials = 5;
    cfg.seed = 1;
    cfg.output_path = "/tmp/openxxz_test_scalar.txt";
    CHECK(run(cfg) == 0);
    const std::string rep = slurp(cfg.output_path);
    CHECK(rep.find("trial 4") != std::string::npos);
    CHECK(rep.find("relative_error") != std::string::npos);
    CHECK(rep.find("locked_branch 1") != std::string::npos);
}

TEST_CASE("default output path respects the environment") {
    RunConfig cfg;
    cfg.command = RunConfig::Command::Solve;
    cfg.N = 1;
    cfg.seed = 3;
    setenv("OPENXXZ_OUT_DIR", "/tmp", 1);
    const std::string p = default_output_path(cfg);
    CHECK(p == "/tmp/openxxz_solve_N1_seed3.report.txt");
    unsetenv("OPENXXZ_OUT_DIR");
}
