#include "rtca/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "rtca/errors.hpp"

namespace rtca {

namespace {

// Reads one meaningful line (skipping blanks and '#" comments); returns false
// at end of input. `line_no` tracks the physical line for error reporting.
bool next_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        return true;
    }
    return false;
}

Time parse_time(const std::string& tok, const std::string& source, int line) {
    if (tok == "inf") return kUnbounded;
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line, "expected integer or 'inf', got '" + tok + "'");
    }
}

} // namespace

XiCurvePair read_curve(std::istream& in, const std::string& source) {
    std::string line;
    int line_no = 0;

    if (!next_line(in, line, line_no))
        throw ParseError(source, line_no, "empty input, expected header");

    long long g = 0, n = 0;
    {
        std::istringstream hs(line);
        std::string kw, gtok, ntok;
        hs >> kw >> gtok >> ntok;
        if (kw != "xi" || gtok.rfind("g=", 0) != 0 || ntok.rfind("N=", 0) != 0)
            throw ParseError(source, line_no,
                             "expected header 'xi g=<int> N=<int>', got '" + line + "'");
        g = parse_time(gtok.substr(2), source, line_no);
        n = parse_time(ntok.substr(2), source, line_no);
        if (g < 1) throw ParseError(source, line_no, "g must be >= 1");
        if (n < 1) throw ParseError(source, line_no, "N must be >= 1");
    }

    XiCurvePair x;
    x.granularity = g;
    x.lower.reserve(static_cast<std::size_t>(n));
    x.upper.reserve(static_cast<std::size_t>(n));
    for (long long k = 1; k <= n; ++k) {
        if (!next_line(in, line, line_no))
            throw ParseError(source, line_no,
                             "unexpected end of input, expected " + std::to_string(n) +
                                 " data lines");
        std::istringstream ls(line);
        std::string ktok, ltok, utok, extra;
        ls >> ktok >> ltok >> utok;
        if (utok.empty())
            throw ParseError(source, line_no, "expected '<k> <lower> <upper>'");
        if (ls >> extra)
            throw ParseError(source, line_no, "trailing content '" + extra + "'");
        Time kk = parse_time(ktok, source, line_no);
        if (kk != k)
            throw ParseError(source, line_no,
                             "expected k=" + std::to_string(k) + ", got " + ktok);
        Time lo = parse_time(ltok, source, line_no);
        Time up = parse_time(utok, source, line_no);
        if (is_unbounded(lo))
            throw ParseError(source, line_no, "lower bound cannot be 'inf'");
        x.lower.push_back(lo);
        x.upper.push_back(up);
    }
    if (next_line(in, line, line_no))
        throw ParseError(source, line_no, "trailing content after " +
                                              std::to_string(n) + " data lines");
    return x;
}

XiCurvePair load_curve(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open curve file: " + path);
    return read_curve(f, path);
}

void write_curve(std::ostream& out, const XiCurvePair& x) {
    out << "xi g=" << x.granularity << " N=" << x.points() << "\n";
    for (Count k = 1; k <= x.points(); ++k)
        out << k << " " << x.lower_at(k) << " " << time_to_string(x.upper_at(k))
            << "\n";
}

void save_curve(const std::string& path, const XiCurvePair& x) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open file for writing: " + path);
    write_curve(f, x);
}

void write_curve_csv(std::ostream& out, const XiCurvePair& x) {
    out << "k,lower,upper\n";
    for (Count k = 1; k <= x.points(); ++k)
        out << k << "," << x.lower_at(k) << "," << time_to_string(x.upper_at(k))
            << "\n";
}

void write_curve_gnuplot(std::ostream& out, const XiCurvePair& x) {
    for (Count k = 1; k <= x.points(); ++k)
        out << k << " " << x.lower_at(k) << "\n";
    out << "\n";
    for (Count k = 1; k <= x.points(); ++k)
        if (!is_unbounded(x.upper_at(k)))
            out << k << " " << x.upper_at(k) << "\n";
}

} // namespace rtca
