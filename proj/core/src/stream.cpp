#include "rtca/stream.hpp"

#include <fstream>
#include <sstream>

#include "rtca/errors.hpp"

namespace rtca {

bool stream_satisfies(const EventStream& s, const XiCurvePair& x) {
    const Count n = x.points();
    const Count last = s.events();
    for (Count i = 0; i <= last; ++i) {
        for (Count k = 1; k <= n && i + k <= last; ++k) {
            const Time gap = s.at(i + k) - s.at(i);
            if (gap < x.lower_at(k)) return false;
            const Time up = x.upper_at(k);
            if (!is_unbounded(up) && gap > up) return false;
        }
    }
    return true;
}

EventStream abstract_stream(const EventStream& s, Count g) {
    if (g < 1) throw std::invalid_argument("abstract_stream: g must be >= 1");
    EventStream out;
    out.times.clear();
    for (Count i = 0; g * i <= s.events(); ++i)
        out.times.push_back(s.at(g * i));
    return out;
}

EventStream read_stream(std::istream& in, const std::string& source) {
    EventStream s;
    s.times.clear();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok, extra;
        ls >> tok;
        if (ls >> extra)
            throw ParseError(source, line_no, "trailing content '" + extra + "'");
        Time t;
        try {
            std::size_t pos = 0;
            t = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError(source, line_no, "expected integer, got '" + tok + "'");
        }
        if (s.times.empty()) {
            if (t != 0)
                throw ParseError(source, line_no, "first timestamp must be 0");
        } else if (t < s.times.back()) {
            throw ParseError(source, line_no, "timestamps must be nondecreasing");
        }
        s.times.push_back(t);
    }
    if (s.times.empty())
        throw ParseError(source, line_no, "empty input, expected timestamps");
    return s;
}

EventStream load_stream(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open stream file: " + path);
    return read_stream(f, path);
}

void write_stream(std::ostream& out, const EventStream& s) {
    for (Time t : s.times) out << t << "\n";
}

} // namespace rtca
