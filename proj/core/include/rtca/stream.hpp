#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/time.hpp"

namespace rtca {

// An event stream is a nondecreasing sequence of integer timestamps.
// Index 0 is the virtual origin and is always present with value 0; real
// events are times[1], times[2], ...
struct EventStream {
    std::vector<Time> times{0};

    Count events() const { return static_cast<Count>(times.size()) - 1; }
    Time at(Count i) const { return times[static_cast<std::size_t>(i)]; }

    bool operator==(const EventStream&) const = default;
    bool operator<(const EventStream& o) const { return times < o.times; }
};

// True iff every window of every tracked length satisfies the curve bounds:
// for all i >= 0 and 1 <= k <= N with i + k in range,
//   lower(k) <= t[i+k] - t[i] <= upper(k).
// Windows beyond the curve's N points are unconstrained.
bool stream_satisfies(const EventStream& s, const XiCurvePair& x);

// Keep every g-th event: result[i] = s[g*i]. Trailing events that do not
// complete a block are dropped.
EventStream abstract_stream(const EventStream& s, Count g);

// File format: one timestamp per line, first line must be 0 (the origin).
// '#' comments and blank lines are ignored.
EventStream read_stream(std::istream& in, const std::string& source);
EventStream load_stream(const std::string& path);
void write_stream(std::ostream& out, const EventStream& s);

} // namespace rtca
