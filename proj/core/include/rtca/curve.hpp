#ifndef RTCA_CURVE_HPP
#define RTCA_CURVE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rtca/time.hpp"

namespace rtca {

/// A pair of event-distance curves in the time domain.
///
/// For a stream t_0 = 0, t_1, t_2, ... the pair bounds every window of k
/// consecutive inter-event steps:  lower(k) <= t_{i+k} - t_i <= upper(k)
/// for all i >= 0 and 1 <= k <= points().  t_0 is the time origin, so the
/// window anchored at i = 0 constrains absolute timestamps.
///
/// Curves are finite: exactly N stored points, k = 1..N.  Windows wider
/// than N carry no information (an unbounded upper / zero lower); nothing
/// is ever extrapolated.  Upper entries may be kUnbounded, lower entries
/// are always finite.  `granularity` records how many fine events one step
/// of this curve spans (1 for fine curves).
struct XiCurvePair {
    Count granularity = 1;
    std::vector<Time> lower; // index 0 holds the k=1 point
    std::vector<Time> upper;

    Count points() const { return static_cast<Count>(lower.size()); }

    // 1-based accessors matching the curve index convention.
    Time lower_at(Count k) const { return lower[static_cast<std::size_t>(k - 1)]; }
    Time upper_at(Count k) const { return upper[static_cast<std::size_t>(k - 1)]; }

    bool operator==(const XiCurvePair&) const = default;
};

/// A pair of event-count curves in the interval domain.
///
/// For an interval length d = 0..dmax, lower[d] is the number of further
/// events guaranteed within d time units after any event, and upper[d] the
/// number that may at most occur.  Stored densely, index = d.
struct AlphaCurvePair {
    std::vector<Count> lower;
    std::vector<Count> upper;

    Count dmax() const { return static_cast<Count>(lower.size()) - 1; }

    bool operator==(const AlphaCurvePair&) const = default;
};

/// A bundle of curves for the same stream observed at several granularities.
struct CoarseCurveSet {
    std::vector<XiCurvePair> entries; // each entry carries its granularity
};

} // namespace rtca

#endif
