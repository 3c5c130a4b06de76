#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/mta.hpp"
#include "rtca/stream.hpp"
#include "rtca/time.hpp"

namespace rtca {

// Brute-force ground truth at desk scale, on a code path independent of the
// engine: plain lists and double-loop window checks, no state packing, no
// graphs. Budgets are hard caps that throw BudgetExceeded; an oracle that
// silently truncates is not an oracle.

inline constexpr std::uint64_t kOracleBudget = 20'000'000;

// Every stream satisfying x with at most maxEvents timestamps (including
// the origin) and times <= maxTime. Prefix-closed by construction: each
// prefix of a satisfying stream is itself satisfying and within the box.
std::vector<EventStream> enumerate_streams(const XiCurvePair& x,
                                           Count maxEvents, Time maxTime,
                                           std::uint64_t budget = kOracleBudget);

// Streams with exactly `events` real events that can be extended with
// further events indefinitely (computed exactly via a liveness fixpoint on
// tail signatures). Trailing windows of an arbitrary finite stream escape
// continuation constraints, so equivalence of tightened curve pairs is only
// meaningful on these.
std::vector<EventStream> extensible_streams(const XiCurvePair& x, Count events,
                                            std::uint64_t budget = kOracleBudget);

// abstract_stream(fine, g) agrees with coarse on every index where both are
// defined (and the origin).
bool is_refinement(const EventStream& fine, const EventStream& coarse, Count g);

struct ModeSwitchEvent {
    Time at = 0;
    std::string from, to;
    SwitchKind kind = SwitchKind::Timeout;
};

struct SimResult {
    EventStream output; // produce timestamps, origin-rooted
    std::vector<ModeSwitchEvent> switches;
    std::string finalMode;
    Count finalBacklog = 0;
};

// Deterministic replay of the granularity-1 component: service emissions
// first, then requests, then switch evaluation at each instant; switch
// tie-break sync > above > below > timeout. Service streams are given per
// mode visit, in visit order, as offsets relative to the visit's entry time;
// a stream inconsistent with the visited mode's service curve (an emission
// violating a window bound, or a gap a real service model could not stretch)
// throws Error.
SimResult simulate_mta(const MtaSpec& spec, const EventStream& input,
                       const std::vector<EventStream>& perVisitService,
                       Time maxTime);

// Convenience: one relative service stream per mode id, restarted on every
// visit of that mode.
SimResult simulate_mta(const MtaSpec& spec, const EventStream& input,
                       const std::map<std::string, EventStream>& perModeService,
                       Time maxTime);

struct OracleCurves {
    XiCurvePair curve;       // truncated at the first window count never seen
    Count requested = 0;
};

// Exact min/max produce windows (anchors: every produce event and the
// origin) over all input streams in the box times all service choices,
// enumerated recursively with the same instant semantics as simulate_mta.
OracleCurves oracle_output_curves(const MtaSpec& spec, const XiCurvePair& inArr,
                                  Count maxEvents, Time maxTime, Count n,
                                  std::uint64_t budget = kOracleBudget);

} // namespace rtca
