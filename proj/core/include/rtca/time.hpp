#ifndef RTCA_TIME_HPP
#define RTCA_TIME_HPP

#include <cstdint>
#include <limits>
#include <string>

namespace rtca {

// All timing quantities are nonnegative integers.  Upper bounds may be
// "unbounded", represented by a sentinel that compares larger than every
// finite value; lower bounds are always finite.
using Time = std::int64_t;
using Count = std::int64_t;

inline constexpr Time kUnbounded = std::numeric_limits<Time>::max();

inline bool is_unbounded(Time t) { return t == kUnbounded; }

// Addition that sticks to the sentinel instead of overflowing.
inline Time sat_add(Time a, Time b) {
    if (is_unbounded(a) || is_unbounded(b)) return kUnbounded;
    if (a > kUnbounded - b) return kUnbounded;
    return a + b;
}

inline std::string time_to_string(Time t) {
    return is_unbounded(t) ? "inf" : std::to_string(t);
}

} // namespace rtca

#endif
