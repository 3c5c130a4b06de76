#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "rtca/curve_algebra.hpp"
#include "rtca/curve_io.hpp"
#include "rtca/mta_io.hpp"
#include "rtca/version.hpp"

using namespace rtca;
namespace fs = std::filesystem;

namespace {

XiCurvePair mk(std::vector<Time> lo, std::vector<Time> up) {
    XiCurvePair x;
    x.lower = std::move(lo);
    x.upper = std::move(up);
    return x;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int seq = 0;
        path = fs::temp_directory_path() /
               ("rtca_cli_test_" + std::to_string(++seq) + "_" +
                std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// A small, fully bounded single-mode component: both the default horizon and
// the oracle box stay tiny.
cli::RunConfig write_fixture(const TempDir& td) {
    MtaSpec spec;
    Mode m;
    m.id = "only";
    m.service = mk({1, 2}, {2, 4});
    spec.modes = {m};
    spec.initialMode = "only";
    spec.initialBacklog = 1;
    save_mta(td.path.string(), spec);
    save_curve((td.path / "arrival.xi").string(), mk({2, 4}, {3, 5}));

    cli::RunConfig cfg;
    cfg.modelPath = (td.path / "model.mta").string();
    cfg.arrivalPath = (td.path / "arrival.xi").string();
    cfg.points = 4;
    cfg.outDir = (td.path / "out").string();
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("granularity lists parse strictly") {
    CHECK(cli::parse_granularities("1") == std::vector<Count>{1});
    CHECK(cli::parse_granularities("1,2,4") == std::vector<Count>{1, 2, 4});
    CHECK(cli::parse_granularities("4,1") == std::vector<Count>{4, 1});
    for (const char* bad : {"", "0", "-2", "2,2", "a", "1x", "1,,2"})
        CHECK_THROWS_AS(cli::parse_granularities(bad), std::invalid_argument);
}

TEST_CASE("validate subcommand") {
    TempDir td;
    cli::RunConfig cfg = write_fixture(td);
    std::ostringstream out, err;

    SECTION("accepts the fixture") {
        CHECK(cli::run_validate(cfg, out, err) == cli::kOk);
        CHECK(out.str().find("ok") != std::string::npos);
        CHECK(err.str().empty());
    }
    SECTION("missing file is a validation failure") {
        cfg.arrivalPath = (td.path / "nope.xi").string();
        CHECK(cli::run_validate(cfg, out, err) == cli::kValidationFailure);
        CHECK(err.str().find("error:") != std::string::npos);
    }
    SECTION("structural diagnostics are forwarded") {
        MtaSpec broken;
        Mode m;
        m.id = "only";
        m.service = mk({1}, {2});
        broken.modes = {m};
        broken.initialMode = "elsewhere";
        save_mta(td.path.string(), broken);
        CHECK(cli::run_validate(cfg, out, err) == cli::kValidationFailure);
        CHECK(err.str().find("model:") != std::string::npos);
    }
}

TEST_CASE("analyze writes a consistent report") {
    TempDir td;
    cli::RunConfig cfg = write_fixture(td);
    cfg.granularities = {1, 2};
    cfg.oracleCheck = true;
    std::ostringstream out, err;
    cli::AnalysisReport rep;
    REQUIRE(cli::run_analyze(cfg, out, err, &rep) == cli::kOk);
    INFO(err.str());

    CHECK(rep.oracleCheck == "pass");
    REQUIRE(rep.perG.size() == 2);
    fs::path dir(cfg.outDir);
    for (const char* stem : {"curve_g1", "curve_g2", "combined", "closed"}) {
        CAPTURE(stem);
        CHECK(fs::exists(dir / (std::string(stem) + ".xi")));
        CHECK(fs::exists(dir / (std::string(stem) + ".csv")));
        CHECK(fs::exists(dir / (std::string(stem) + ".dat")));
    }
    REQUIRE(fs::exists(dir / "summary.txt"));

    SECTION("written curves re-parse to the report curves") {
        for (const auto& r : rep.perG) {
            XiCurvePair back =
                load_curve((dir / ("curve_g" + std::to_string(r.g) + ".xi")).string());
            CHECK(back == r.analysis.curve);
            CHECK(validate(back).empty());
        }
        CHECK(load_curve((dir / "combined.xi").string()) == rep.combined);
        REQUIRE(rep.closed.has_value());
        CHECK(load_curve((dir / "closed.xi").string()) == *rep.closed);
    }
    SECTION("combined and closed recombine from the parts") {
        CoarseCurveSet set;
        for (const auto& r : rep.perG) set.entries.push_back(r.analysis.curve);
        CHECK(rep.combined == combine(set, cfg.points));
        REQUIRE(rep.closed.has_value());
        CHECK(*rep.closed == causality_closure(rep.combined));
    }
    SECTION("summary carries version, hash and verdicts") {
        std::string s = slurp(dir / "summary.txt");
        CHECK(s.find(std::string("version=") + kVersion) != std::string::npos);
        CHECK(s.find("config_hash=") != std::string::npos);
        CHECK(s.find("oracle_check=pass") != std::string::npos);
        CHECK(s.find("[g=1]") != std::string::npos);
        CHECK(s.find("[g=2]") != std::string::npos);
        CHECK(s.find("[combined]") != std::string::npos);
        CHECK(s.find("[closed]") != std::string::npos);
        for (const auto& r : rep.perG) CHECK(r.distance != "n/a");
    }
    SECTION("reruns are byte-identical") {
        std::string g1 = slurp(dir / "curve_g1.xi");
        std::string comb = slurp(dir / "combined.csv");
        std::ostringstream o2, e2;
        REQUIRE(cli::run_analyze(cfg, o2, e2) == cli::kOk);
        CHECK(slurp(dir / "curve_g1.xi") == g1);
        CHECK(slurp(dir / "combined.csv") == comb);
    }
}

TEST_CASE("analyze options and failure paths") {
    TempDir td;
    cli::RunConfig cfg = write_fixture(td);
    std::ostringstream out, err;

    SECTION("--no-closure omits the closed curve") {
        cfg.closure = false;
        cli::AnalysisReport rep;
        REQUIRE(cli::run_analyze(cfg, out, err, &rep) == cli::kOk);
        CHECK_FALSE(rep.closed.has_value());
        CHECK_FALSE(fs::exists(fs::path(cfg.outDir) / "closed.xi"));
        std::string s = slurp(fs::path(cfg.outDir) / "summary.txt");
        CHECK(s.find("[closed]") == std::string::npos);
    }
    SECTION("a lone granularity 1 combines to itself") {
        cli::AnalysisReport rep;
        REQUIRE(cli::run_analyze(cfg, out, err, &rep) == cli::kOk);
        REQUIRE(rep.perG.size() == 1);
        CHECK(rep.combined == rep.perG[0].analysis.curve);
        CHECK(rep.perG[0].distance == "0");
    }
    SECTION("oracle check without granularity 1 is skipped, not failed") {
        cfg.granularities = {2};
        cfg.oracleCheck = true;
        cli::AnalysisReport rep;
        REQUIRE(cli::run_analyze(cfg, out, err, &rep) == cli::kOk);
        CHECK(rep.oracleCheck.find("skipped") == 0);
    }
    SECTION("oversized granularity is rejected up front") {
        cfg.granularities = {1, 9};
        CHECK(cli::run_analyze(cfg, out, err) == cli::kValidationFailure);
        CHECK(err.str().find("granularity 9") != std::string::npos);
    }
    SECTION("runaway backlog surfaces as the budget exit code") {
        MtaSpec slow;
        Mode m;
        m.id = "only";
        m.service = mk({30}, {60});
        slow.modes = {m};
        slow.initialMode = "only";
        save_mta(td.path.string(), slow);
        save_curve((td.path / "arrival.xi").string(), mk({1}, {1}));
        CHECK(cli::run_analyze(cfg, out, err) == cli::kBudgetExceeded);
        CHECK(err.str().find("error:") != std::string::npos);
    }
}

TEST_CASE("oracle subcommand verdicts") {
    TempDir td;
    cli::RunConfig cfg = write_fixture(td);
    cfg.points = 3;
    std::ostringstream out, err;

    SECTION("agrees on the fixture") {
        CHECK(cli::run_oracle(cfg, out, err) == cli::kOk);
        CHECK(out.str().find("verdict: pass") != std::string::npos);
    }
    SECTION("refuses an unbounded default horizon") {
        save_curve((td.path / "arrival.xi").string(), mk({2}, {kUnbounded}));
        CHECK(cli::run_oracle(cfg, out, err) == cli::kBudgetExceeded);
        CHECK(err.str().find("refused") != std::string::npos);
    }
}
