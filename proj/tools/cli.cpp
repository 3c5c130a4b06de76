#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rtca/curve_algebra.hpp"
#include "rtca/curve_io.hpp"
#include "rtca/errors.hpp"
#include "rtca/mta_io.hpp"
#include "rtca/oracle.hpp"
#include "rtca/rational.hpp"
#include "rtca/version.hpp"

namespace rtca::cli {

namespace fs = std::filesystem;

std::vector<Count> parse_granularities(const std::string& text) {
    std::vector<Count> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad granularity '" + tok + "'");
        }
        if (pos != tok.size() || v < 1)
            throw std::invalid_argument("bad granularity '" + tok + "'");
        if (std::find(out.begin(), out.end(), v) != out.end())
            throw std::invalid_argument("duplicate granularity " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("no granularities given");
    return out;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

// Canonical re-serialization of everything analysis-relevant.
std::string describe_inputs(const RunConfig& cfg, const MtaSpec& spec,
                            const XiCurvePair& arrival) {
    std::ostringstream os;
    os << "version " << kVersion << '\n';
    write_curve(os, arrival);
    for (const auto& m : spec.modes) {
        os << "mode " << m.id << '\n';
        write_curve(os, m.service);
        if (m.hasLow) os << "blow " << m.backlogLow << '\n';
        if (m.hasHigh) os << "bhigh " << m.backlogHigh << '\n';
        os << "dwell " << m.dwellMin << ' ' << time_to_string(m.dwellMax) << '\n';
        for (const auto& t : m.transitions)
            os << "t " << static_cast<int>(t.kind) << ' ' << t.signal << ' '
               << t.target << '\n';
    }
    os << "initial " << spec.initialMode << ' ' << spec.initialBacklog << '\n';
    os << "granularities";
    for (Count g : cfg.granularities) os << ' ' << g;
    os << "\npoints " << cfg.points << "\nhorizon " << time_to_string(cfg.horizon)
       << "\nclosure " << (cfg.closure ? 1 : 0) << '\n';
    return os.str();
}

struct Inputs {
    MtaSpec spec;
    XiCurvePair arrival;
};

// Loads and validates both input files; diagnostics go to err. Returns
// nothing when the run cannot proceed.
std::optional<Inputs> load_inputs(const RunConfig& cfg, std::ostream& err) {
    Inputs in;
    try {
        in.spec = load_mta(cfg.modelPath);
        in.arrival = load_curve(cfg.arrivalPath);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return std::nullopt;
    }
    bool bad = false;
    for (const auto& d : validate_mta(in.spec)) {
        err << "model: " << d << '\n';
        bad = true;
    }
    for (const auto& d : validate(in.arrival)) {
        err << "arrival curve: " << d << '\n';
        bad = true;
    }
    if (!bad && in.arrival.granularity != 1) {
        err << "arrival curve: must be at granularity 1\n";
        bad = true;
    }
    if (bad) return std::nullopt;
    return in;
}

char kind_letter(PointKind k) {
    switch (k) {
    case PointKind::Value: return 'V';
    case PointKind::Unbounded: return 'U';
    case PointKind::Unreachable: return 'X';
    }
    return '?';
}

void write_curve_files(const fs::path& dir, const std::string& stem,
                       const XiCurvePair& x) {
    if (x.points() >= 1) save_curve((dir / (stem + ".xi")).string(), x);
    std::ofstream csv(dir / (stem + ".csv"));
    write_curve_csv(csv, x);
    std::ofstream dat(dir / (stem + ".dat"));
    write_curve_gnuplot(dat, x);
}

// Boxed engine-vs-oracle comparison on the fine model. Returns "pass",
// "mismatch" or a reason the comparison could not run; mismatch details go
// to err.
std::string cross_check(const Inputs& in, Count points, std::ostream& err) {
    Time T = default_horizon(in.spec, in.arrival, points);
    if (is_unbounded(T)) return "skipped (default horizon unbounded)";
    Count maxEvents = points + 2;
    EngineLimits el;
    el.horizon = T;
    el.maxInputEvents = maxEvents - 1;
    ComponentAnalysis fine = analyze_component(in.spec, in.arrival, 1, points, el);
    OracleCurves oc =
        oracle_output_curves(in.spec, in.arrival, maxEvents, T, points);
    if (fine.curve == oc.curve) return "pass";
    err << "oracle mismatch (box: " << maxEvents << " events, horizon " << T
        << ")\n";
    for (Count k = 1; k <= std::max(fine.curve.points(), oc.curve.points()); ++k) {
        auto cell = [&](const XiCurvePair& c) -> std::string {
            if (k > c.points()) return "-";
            return "[" + time_to_string(c.lower_at(k)) + "," +
                   time_to_string(c.upper_at(k)) + "]";
        };
        err << "  k=" << k << " engine " << cell(fine.curve) << " oracle "
            << cell(oc.curve) << '\n';
    }
    return "mismatch";
}

} // namespace

std::uint64_t config_hash(const RunConfig& cfg, const MtaSpec& spec,
                          const XiCurvePair& arrival) {
    return fnv1a(1469598103934665603ull, describe_inputs(cfg, spec, arrival));
}

int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto in = load_inputs(cfg, err);
    if (!in) return kValidationFailure;
    out << "model: " << in->spec.modes.size() << " mode(s), initial '"
        << in->spec.initialMode << "', backlog " << in->spec.initialBacklog
        << '\n';
    out << "arrival curve: " << in->arrival.points() << " point(s)\n";
    out << "ok\n";
    return kOk;
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                AnalysisReport* reportOut) {
    auto in = load_inputs(cfg, err);
    if (!in) return kValidationFailure;
    for (Count g : cfg.granularities) {
        if (in->arrival.points() < g) {
            err << "error: granularity " << g
                << " exceeds the arrival curve's point count\n";
            return kValidationFailure;
        }
        for (const auto& m : in->spec.modes)
            if (m.service.points() < g) {
                err << "error: granularity " << g << " exceeds mode '" << m.id
                    << "' service curve's point count\n";
                return kValidationFailure;
            }
    }

    AnalysisReport rep;
    rep.configHash = config_hash(cfg, in->spec, in->arrival);

    // One analysis per granularity, run concurrently; everything after the
    // joins below is single-threaded assembly.
    EngineLimits lim;
    lim.horizon = cfg.horizon;
    auto task = [&](Count g) {
        GranularityResult r;
        r.g = g;
        auto t0 = std::chrono::steady_clock::now();
        r.analysis = analyze_component(in->spec, in->arrival, g, cfg.points, lim);
        r.wallMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
        return r;
    };
    std::vector<std::future<GranularityResult>> futs;
    for (Count g : cfg.granularities)
        futs.push_back(std::async(std::launch::async, task, g));
    std::string failure;
    int failCode = kOk;
    for (auto& f : futs) {
        try {
            rep.perG.push_back(f.get());
        } catch (const BudgetExceeded& e) {
            failure = e.what();
            failCode = kBudgetExceeded;
        } catch (const Error& e) {
            failure = e.what();
            failCode = kValidationFailure;
        } catch (const std::exception& e) {
            failure = e.what();
            failCode = kValidationFailure;
        }
    }
    if (failCode != kOk) {
        err << "error: " << failure << '\n';
        return failCode;
    }

    const XiCurvePair* fine = nullptr;
    for (const auto& r : rep.perG)
        if (r.g == 1) fine = &r.analysis.curve;
    for (auto& r : rep.perG) {
        if (r.g == 1) {
            r.distance = "0";
            continue;
        }
        if (!fine) continue;
        Count kmax = std::min(r.analysis.curve.points(), fine->points() / r.g);
        if (kmax < 1) continue;
        try {
            r.distance = distance(*fine, r.analysis.curve, r.g, kmax).to_string();
        } catch (const std::exception&) {
            r.distance = "n/a"; // an upper is unbounded on one side only
        }
    }

    if (cfg.oracleCheck) {
        if (!fine)
            rep.oracleCheck = "skipped (granularity 1 not analyzed)";
        else {
            try {
                rep.oracleCheck = cross_check(*in, cfg.points, err);
            } catch (const BudgetExceeded&) {
                rep.oracleCheck = "skipped (oracle budget exceeded)";
            }
            if (rep.oracleCheck == "mismatch") return kOracleMismatch;
        }
    }

    CoarseCurveSet set;
    for (const auto& r : rep.perG)
        if (r.analysis.curve.points() >= 1) set.entries.push_back(r.analysis.curve);
    if (set.entries.empty()) {
        err << "error: no analysis produced any curve point\n";
        return kValidationFailure;
    }
    rep.combined = combine(set, cfg.points);
    if (cfg.closure) {
        try {
            rep.closed = causality_closure(rep.combined);
        } catch (const EmptyStreamSet& e) {
            err << "error: combined curve admits no stream (" << e.what()
                << ")\n";
            return kValidationFailure;
        }
    }

    fs::path dir(cfg.outDir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        err << "error: cannot create output directory '" << cfg.outDir << "'\n";
        return kValidationFailure;
    }
    for (const auto& r : rep.perG)
        write_curve_files(dir, "curve_g" + std::to_string(r.g), r.analysis.curve);
    write_curve_files(dir, "combined", rep.combined);
    if (rep.closed) write_curve_files(dir, "closed", *rep.closed);

    {
        std::ofstream s(dir / "summary.txt");
        s << "# kinds: V finite, U unbounded upper, X unreachable window\n";
        s << "[tool]\nversion=" << kVersion
          << "\nconfig_hash=" << hex64(rep.configHash) << "\n\n";
        s << "[config]\nmodel=" << cfg.modelPath << "\narrival=" << cfg.arrivalPath
          << "\ngranularities=";
        for (std::size_t i = 0; i < cfg.granularities.size(); ++i)
            s << (i ? "," : "") << cfg.granularities[i];
        s << "\npoints=" << cfg.points << "\nhorizon=" << time_to_string(cfg.horizon)
          << "\nclosure=" << (cfg.closure ? "on" : "off")
          << "\noracle_check=" << (cfg.oracleCheck ? rep.oracleCheck : "off")
          << "\n\n";
        for (const auto& r : rep.perG) {
            s << "[g=" << r.g << "]\nrealized_points=" << r.analysis.curve.points()
              << "\nkinds=";
            for (PointKind k : r.analysis.kinds) s << kind_letter(k);
            s << "\nstates=" << r.analysis.stats.states
              << "\nedges=" << r.analysis.stats.edges << "\nwall_ms=" << r.wallMs
              << "\ndistance=" << r.distance << "\n\n";
        }
        s << "[combined]\nrealized_points=" << rep.combined.points() << "\n";
        if (rep.closed)
            s << "\n[closed]\nrealized_points=" << rep.closed->points() << "\n";
    }

    out << "analyzed " << rep.perG.size() << " granularit"
        << (rep.perG.size() == 1 ? "y" : "ies") << " -> " << cfg.outDir << '\n';
    if (reportOut) *reportOut = std::move(rep);
    return kOk;
}

int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto in = load_inputs(cfg, err);
    if (!in) return kValidationFailure;
    Time T = default_horizon(in->spec, in->arrival, cfg.points);
    if (is_unbounded(T)) {
        err << "refused: default horizon is unbounded, instance does not fit "
               "the oracle budget\n";
        return kBudgetExceeded;
    }
    Count maxEvents = cfg.points + 2;
    EngineLimits el;
    el.horizon = T;
    el.maxInputEvents = maxEvents - 1;
    ComponentAnalysis fine;
    OracleCurves oc;
    try {
        fine = analyze_component(in->spec, in->arrival, 1, cfg.points, el);
        oc = oracle_output_curves(in->spec, in->arrival, maxEvents, T, cfg.points);
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return kBudgetExceeded;
    }
    out << "box: " << maxEvents << " input events, horizon " << T << '\n';
    out << "k\tengine\t\toracle\n";
    for (Count k = 1; k <= std::max(fine.curve.points(), oc.curve.points()); ++k) {
        auto cell = [&](const XiCurvePair& c) -> std::string {
            if (k > c.points()) return "-";
            return "[" + time_to_string(c.lower_at(k)) + "," +
                   time_to_string(c.upper_at(k)) + "]";
        };
        out << k << '\t' << cell(fine.curve) << '\t' << cell(oc.curve) << '\n';
    }
    if (fine.curve == oc.curve) {
        out << "verdict: pass\n";
        return kOk;
    }
    out << "verdict: MISMATCH\n";
    return kOracleMismatch;
}

} // namespace rtca::cli
