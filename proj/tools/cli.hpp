#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/engine.hpp"
#include "rtca/mta.hpp"
#include "rtca/time.hpp"

namespace rtca::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kOracleMismatch = 2;
inline constexpr int kBudgetExceeded = 3;

struct RunConfig {
    std::string modelPath;
    std::string arrivalPath;
    std::vector<Count> granularities{1};
    Count points = 8;
    Time horizon = kUnbounded; // finite value switches the engine to boxed runs
    bool closure = true;
    bool oracleCheck = false;
    std::string outDir = "out";
};

// "1,2,3" -> {1,2,3}; throws std::invalid_argument on junk, duplicates or
// non-positive entries.
std::vector<Count> parse_granularities(const std::string& text);

// Hash over everything that determines the written curves: tool version,
// the loaded model and curves (re-serialized, so formatting differences in
// the input files do not matter), and the analysis configuration. Wall
// times never enter.
std::uint64_t config_hash(const RunConfig& cfg, const MtaSpec& spec,
                          const XiCurvePair& arrival);

struct GranularityResult {
    Count g = 0;
    ComponentAnalysis analysis;
    std::int64_t wallMs = 0;
    std::string distance = "n/a"; // vs the g=1 curve, exact rational
};

struct AnalysisReport {
    std::vector<GranularityResult> perG;
    XiCurvePair combined;
    std::optional<XiCurvePair> closed;
    std::string oracleCheck = "off"; // off | pass | skipped (<why>)
    std::uint64_t configHash = 0;
};

// Subcommand bodies. Human-readable progress and diagnostics go to `out`
// and `err`; the return value is the process exit code.
int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                AnalysisReport* reportOut = nullptr);
int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace rtca::cli
