#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/mta.hpp"
#include "rtca/network.hpp"
#include "rtca/stream.hpp"
#include "rtca/time.hpp"

namespace rtca {

// Exhaustive integer-time exploration of a Network. All guards and
// invariants in generated networks are closed integer comparisons, so unit
// time steps plus clock capping (each clock value saturates just above the
// largest constant it is compared against, capped states merged) preserve
// reachability and exact window extrema on a finite graph.
//
// Two modes:
//   - unboxed (default): no absolute time in the state; exact
//     infinite-horizon results; "unbounded" upper windows are detected via
//     pumpable cycles (a positive-duration cycle reachable between a window
//     anchor and its completion),
//   - boxed (horizon set, optionally maxInputEvents): absolute time is part
//     of the state and exploration stops at the horizon; used for
//     budget-matched comparisons against exhaustive stream enumeration and
//     for horizon-monotonicity checks.

struct EngineLimits {
    Time horizon = kUnbounded;     // finite => boxed exploration
    Count maxInputEvents = -1;     // boxed cap on real input events; -1 = none
    std::uint64_t maxStates = 8'000'000; // hard budget, throws BudgetExceeded
};

struct EngineStats {
    std::uint64_t states = 0;
    std::uint64_t edges = 0;
    std::int64_t buildMs = 0;
    std::int64_t queryMs = 0;
};

enum class PointKind { Value, Unbounded, Unreachable };

struct CurvePoint {
    PointKind kind = PointKind::Unreachable;
    Time value = 0; // meaningful for Value only

    bool operator==(const CurvePoint&) const = default;
};

// Reachable product graph, built once; window queries share it.
class Exploration {
  public:
    explicit Exploration(const Network& net, const EngineLimits& lim = {});
    // Replaces the input generator with a fixed stream: req fires exactly at
    // the given instants (boxed only).
    Exploration(const Network& net, const EventStream& fixedInput,
                const EngineLimits& lim);
    ~Exploration();
    Exploration(Exploration&&) noexcept;
    Exploration& operator=(Exploration&&) noexcept;

    // Min / max time spanned by K consecutive produce events, over all runs
    // and all window anchors (every produce event plus the time origin).
    CurvePoint lower(Count k) const;
    CurvePoint upper(Count k) const;

    const EngineStats& stats() const;

    // Every produce-timestamp sequence observable within the box, as
    // origin-rooted streams (prefix-closed, deduplicated, sorted).
    // Requires boxed limits.
    std::vector<EventStream> produce_streams() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot helpers over a throwaway Exploration.
CurvePoint analyze_lower(const Network& net, Count k,
                         const EngineLimits& lim = {});
CurvePoint analyze_upper(const Network& net, Count k,
                         const EngineLimits& lim = {});

struct ComponentAnalysis {
    // Output curve at the analysis granularity. Points are dropped from the
    // first unreachable window count on; unbounded maxima surface as
    // unbounded upper values.
    XiCurvePair curve;
    std::vector<PointKind> kinds; // one entry per requested point
    EngineStats stats;
};

// Translates spec at granularity g, drives it with sample(inArr, g), and
// measures n output-curve points.
ComponentAnalysis analyze_component(const MtaSpec& spec,
                                    const XiCurvePair& inArr, Count g, Count n,
                                    const EngineLimits& lim = {});

// The largest time any involved generator may take to emit n events, plus
// the largest finite dwell bound: a box comfortably containing every window
// of up to n produce events for well-behaved models. Unbounded when an
// ingredient's upper bounds are unbounded.
Time default_horizon(const MtaSpec& spec, const XiCurvePair& inArr, Count n);

} // namespace rtca
