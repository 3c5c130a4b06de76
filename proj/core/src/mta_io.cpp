#include "rtca/mta_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rtca/curve_io.hpp"
#include "rtca/errors.hpp"

namespace rtca {

namespace {

bool next_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line.erase(0, first);
        line.erase(line.find_last_not_of(" \t\r") + 1);
        return true;
    }
    return false;
}

Time parse_count(const std::string& tok, const std::string& source, int line,
                 bool allow_inf) {
    if (allow_inf && tok == "inf") return kUnbounded;
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line,
                         "expected a nonnegative integer, got '" + tok + "'");
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

} // namespace

MtaSpec read_mta(std::istream& in, const std::string& source,
                 const std::function<XiCurvePair(const std::string&)>& loadCurve) {
    MtaSpec spec;
    Mode* cur = nullptr;
    std::vector<bool> hasService;
    bool haveInitial = false;
    std::string line;
    int line_no = 0;

    while (next_line(in, line, line_no)) {
        if (haveInitial)
            throw ParseError(source, line_no, "content after the initial line");

        auto toks = split_ws(line);
        if (toks[0] == "mode") {
            if (toks.size() != 2)
                throw ParseError(source, line_no, "expected 'mode <id>'");
            spec.modes.push_back(Mode{});
            cur = &spec.modes.back();
            cur->id = toks[1];
            hasService.push_back(false);
        } else if (toks[0] == "initial") {
            if (toks.size() != 3 || toks[2].rfind("q=", 0) != 0)
                throw ParseError(source, line_no, "expected 'initial <id> q=<int>'");
            spec.initialMode = toks[1];
            spec.initialBacklog =
                parse_count(toks[2].substr(2), source, line_no, false);
            haveInitial = true;
        } else if (toks[0] == "on") {
            if (!cur)
                throw ParseError(source, line_no, "transition before any mode");
            MtaTransition t;
            std::size_t arrow; // index of the "->" token
            if (toks.size() >= 2 && toks[1] == "sync") {
                if (toks.size() != 5)
                    throw ParseError(source, line_no,
                                     "expected 'on sync <signal> -> <id>'");
                t.kind = SwitchKind::Sync;
                t.signal = toks[2];
                arrow = 3;
            } else {
                if (toks.size() != 4)
                    throw ParseError(source, line_no,
                                     "expected 'on <kind> -> <id>'");
                if (toks[1] == "timeout") t.kind = SwitchKind::Timeout;
                else if (toks[1] == "above") t.kind = SwitchKind::BufferAbove;
                else if (toks[1] == "below") t.kind = SwitchKind::BufferBelow;
                else
                    throw ParseError(source, line_no,
                                     "unknown transition kind '" + toks[1] + "'");
                arrow = 2;
            }
            if (toks[arrow] != "->")
                throw ParseError(source, line_no, "expected '->' before the target");
            t.target = toks[arrow + 1];
            cur->transitions.push_back(t);
        } else if (line.find('=') != std::string::npos && toks.size() == 1) {
            if (!cur)
                throw ParseError(source, line_no, "key before any mode");
            auto eq = line.find('=');
            std::string key = line.substr(0, eq), val = line.substr(eq + 1);
            if (key == "service") {
                cur->service = loadCurve(val);
                hasService.back() = true;
            } else if (key == "blow") {
                cur->backlogLow = parse_count(val, source, line_no, false);
                cur->hasLow = true;
            } else if (key == "bhigh") {
                cur->backlogHigh = parse_count(val, source, line_no, false);
                cur->hasHigh = true;
            } else if (key == "dwell") {
                if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                    throw ParseError(source, line_no,
                                     "expected 'dwell=[<int>,<int|inf>]'");
                auto comma = val.find(',');
                if (comma == std::string::npos)
                    throw ParseError(source, line_no,
                                     "expected 'dwell=[<int>,<int|inf>]'");
                cur->dwellMin = parse_count(val.substr(1, comma - 1), source,
                                            line_no, false);
                cur->dwellMax = parse_count(
                    val.substr(comma + 1, val.size() - comma - 2), source,
                    line_no, true);
            } else {
                throw ParseError(source, line_no, "unknown key '" + key + "'");
            }
        } else {
            throw ParseError(source, line_no, "unrecognized line '" + line + "'");
        }
    }

    if (!haveInitial)
        throw ParseError(source, line_no, "missing 'initial <id> q=<int>' line");
    for (std::size_t i = 0; i < spec.modes.size(); ++i)
        if (!hasService[i])
            throw ParseError(source, line_no,
                             "mode '" + spec.modes[i].id + "' has no service=");
    return spec;
}

MtaSpec load_mta(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open model file: " + path);
    auto dir = std::filesystem::path(path).parent_path();
    return read_mta(f, path, [&dir](const std::string& rel) {
        return load_curve((dir / rel).string());
    });
}

void save_mta(const std::string& dir, const MtaSpec& spec) {
    std::filesystem::create_directories(dir);
    auto base = std::filesystem::path(dir);
    std::ofstream f(base / "model.mta");
    if (!f) throw Error("cannot open file for writing: " + (base / "model.mta").string());
    for (const auto& m : spec.modes) {
        std::string curveFile = "service_" + m.id + ".xi";
        save_curve((base / curveFile).string(), m.service);
        f << "mode " << m.id << "\n";
        f << "  service=" << curveFile << "\n";
        if (m.hasLow) f << "  blow=" << m.backlogLow << "\n";
        if (m.hasHigh) f << "  bhigh=" << m.backlogHigh << "\n";
        if (m.dwellMin != 0 || !is_unbounded(m.dwellMax))
            f << "  dwell=[" << m.dwellMin << "," << time_to_string(m.dwellMax)
              << "]\n";
        for (const auto& t : m.transitions) {
            f << "  on ";
            switch (t.kind) {
            case SwitchKind::Sync: f << "sync " << t.signal; break;
            case SwitchKind::Timeout: f << "timeout"; break;
            case SwitchKind::BufferAbove: f << "above"; break;
            case SwitchKind::BufferBelow: f << "below"; break;
            }
            f << " -> " << t.target << "\n";
        }
    }
    f << "initial " << spec.initialMode << " q=" << spec.initialBacklog << "\n";
}

} // namespace rtca
