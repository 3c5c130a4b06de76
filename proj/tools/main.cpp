#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "rtca/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Granularity-based event-curve analysis of mode-switching "
                 "components"};
    app.set_version_flag("--version", std::string(rtca::kVersion));
    app.require_subcommand(1);

    rtca::cli::RunConfig cfg;
    std::string gText = "1";
    long long horizon = -1;
    bool noClosure = false;

    auto add_common = [&](CLI::App* sub, bool withAnalyzeFlags) {
        sub->add_option("model", cfg.modelPath, "component model file (.mta)")
            ->required();
        sub->add_option("arrival", cfg.arrivalPath, "arrival curve file (.xi)")
            ->required();
        sub->add_option("--points", cfg.points, "output curve points")
            ->check(CLI::PositiveNumber);
        if (withAnalyzeFlags) {
            sub->add_option("--granularities", gText,
                            "comma-separated analysis granularities");
            sub->add_option("--horizon", horizon,
                            "finite exploration horizon (default: exact "
                            "infinite-horizon analysis)");
            sub->add_flag("--no-closure", noClosure,
                          "skip the final causality closure");
            sub->add_flag("--oracle-check", cfg.oracleCheck,
                          "cross-check granularity 1 against the enumeration "
                          "oracle");
            sub->add_option("--out", cfg.outDir, "output directory");
        }
    };

    CLI::App* validate = app.add_subcommand("validate", "load and check inputs");
    add_common(validate, false);
    CLI::App* analyze =
        app.add_subcommand("analyze", "run the multi-granularity pipeline");
    add_common(analyze, true);
    CLI::App* oracle = app.add_subcommand(
        "oracle", "compare the fine engine against exhaustive enumeration");
    add_common(oracle, false);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.granularities = rtca::cli::parse_granularities(gText);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return rtca::cli::kValidationFailure;
    }
    if (horizon >= 0) cfg.horizon = horizon;
    cfg.closure = !noClosure;

    if (validate->parsed())
        return rtca::cli::run_validate(cfg, std::cout, std::cerr);
    if (analyze->parsed())
        return rtca::cli::run_analyze(cfg, std::cout, std::cerr);
    return rtca::cli::run_oracle(cfg, std::cout, std::cerr);
}
