#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "run_config.hpp"

using namespace arw::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path tmp_dir() {
    const fs::path d = fs::temp_directory_path() / "arw_cli_tests";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("parse_config fills defaults and reads flags") {
    const ParseOutcome out =
        parse_config({"mu-c", "--lambda", "1", "--dim", "1", "--jumps", "directed", "--seed", "7"});
    REQUIRE(!out.done);
    CHECK(out.config.command == "mu-c");
    CHECK(out.config.lambda == 1.0);
    CHECK(out.config.seed == 7);
    CHECK(out.config.mu_min == 0.05);
    CHECK(out.config.mu_max == 0.95);
    CHECK(out.config.target_width == 0.1);
}

TEST_CASE("lambda accepts the token inf") {
    const ParseOutcome out = parse_config({"ghosts", "--lambda", "inf"});
    REQUIRE(!out.done);
    CHECK(std::isinf(out.config.lambda));
}

TEST_CASE("usage errors exit with code 2") {
    SUBCASE("negative density") {
        const ParseOutcome out = parse_config({"directed", "--mu", "-1"});
        CHECK(out.done);
        CHECK(out.exit_code == exit_usage);
    }
    SUBCASE("unknown flag") {
        const ParseOutcome out = parse_config({"directed", "--bogus", "3"});
        CHECK(out.done);
        CHECK(out.exit_code == exit_usage);
    }
    SUBCASE("missing subcommand") {
        const ParseOutcome out = parse_config({"--mu", "0.5"});
        CHECK(out.done);
        CHECK(out.exit_code == exit_usage);
    }
    SUBCASE("infinite lambda where a finite one is required") {
        const ParseOutcome out = parse_config({"directed", "--lambda", "inf"});
        CHECK(out.done);
        CHECK(out.exit_code == exit_usage);
    }
    SUBCASE("driftless F estimate without a cutoff is a usage failure") {
        RunConfig cfg;
        cfg.command = "f-lambda";
        cfg.jumps = "sym1d";
        cfg.samples = 10;
        CHECK(run_command(cfg) == exit_usage);
    }
}

TEST_CASE("config file provides values, flags override, unknown keys rejected") {
    const fs::path dir = tmp_dir();
    const fs::path file = dir / "run.cfg";
    {
        std::ofstream f(file);
        f << "# settings\nmu=0.75\nlambda=2\nreps=17\n";
    }
    SUBCASE("file values are read") {
        const ParseOutcome out = parse_config({"directed", "--config", file.string()});
        REQUIRE(!out.done);
        CHECK(out.config.mu == 0.75);
        CHECK(out.config.lambda == 2.0);
        CHECK(out.config.reps == 17);
    }
    SUBCASE("explicit flags win") {
        const ParseOutcome out =
            parse_config({"directed", "--config", file.string(), "--mu", "0.6"});
        REQUIRE(!out.done);
        CHECK(out.config.mu == 0.6);
        CHECK(out.config.lambda == 2.0);
    }
    SUBCASE("unknown keys are rejected") {
        const fs::path bad = dir / "bad.cfg";
        {
            std::ofstream f(bad);
            f << "mu=0.5\nnot_a_key=1\n";
        }
        const ParseOutcome out = parse_config({"directed", "--config", bad.string()});
        CHECK(out.done);
        CHECK(out.exit_code == exit_usage);
    }
}

TEST_CASE("outputs are byte-reproducible and never left partial") {
    const fs::path dir = tmp_dir();

    SUBCASE("rerun with identical flags gives identical bytes") {
        const fs::path a = dir / "a.csv";
        const fs::path b = dir / "b.csv";
        RunConfig cfg;
        cfg.command = "directed";
        cfg.window = 128;
        cfg.mu = 0.75;
        cfg.reps = 40;
        cfg.seed = 9;
        cfg.out = a.string();
        REQUIRE(run_command(cfg) == exit_ok);
        cfg.out = b.string();
        REQUIRE(run_command(cfg) == exit_ok);
        const std::string sa = slurp(a);
        CHECK(!sa.empty());
        CHECK(sa == slurp(b));
        CHECK(!fs::exists(a.string() + ".partial"));
    }

    SUBCASE("executor count does not change the bytes") {
        const fs::path a = dir / "g1.csv";
        const fs::path b = dir / "g2.csv";
        RunConfig cfg;
        cfg.command = "ghosts";
        cfg.radius = 6;
        cfg.mu = 0.5;
        cfg.reps = 20;
        cfg.seed = 4;
        cfg.threads = 1;
        cfg.out = a.string();
        REQUIRE(run_command(cfg) == exit_ok);
        cfg.threads = 2;
        cfg.out = b.string();
        REQUIRE(run_command(cfg) == exit_ok);
        CHECK(slurp(a) == slurp(b));
    }

    SUBCASE("json mirrors the rows") {
        const fs::path a = dir / "f.json";
        RunConfig cfg;
        cfg.command = "f-lambda";
        cfg.jumps = "directed";
        cfg.samples = 1000;
        cfg.format = "json";
        cfg.out = a.string();
        REQUIRE(run_command(cfg) == exit_ok);
        const std::string body = slurp(a);
        CHECK(body.find("\"metric\": \"F_hat\"") != std::string::npos);
        CHECK(body.find("\"command\": \"f-lambda\"") != std::string::npos);
    }
}

TEST_CASE("csv output carries the schema header and full parameter tuple") {
    const fs::path dir = tmp_dir();
    const fs::path a = dir / "s.csv";
    RunConfig cfg;
    cfg.command = "stabilize";
    cfg.window = 32;
    cfg.mu = 0.5;
    cfg.lambda = std::numeric_limits<double>::infinity();
    cfg.jumps = "sym1d";
    cfg.reps = 3;
    cfg.seed = 12;
    cfg.out = a.string();
    REQUIRE(run_command(cfg) == exit_ok);
    const std::string body = slurp(a);
    CHECK(body.rfind("schema,command,dim,lambda,mu,jumps,L,reps,seed,cap,replicate,metric,value",
                     0) == 0);
    CHECK(body.find("arw-1,stabilize,1,inf,0.5,sym1d,32,3,12,0,") != std::string::npos);
    CHECK(body.find(",stable,1") != std::string::npos);
}

TEST_CASE("check command reports suite summaries and exit 0") {
    RunConfig cfg;
    cfg.command = "check";
    cfg.suite = "abelian";
    cfg.reps = 12;
    cfg.seed = 1;
    cfg.threads = 2;
    CHECK(run_command(cfg) == exit_ok);
}
