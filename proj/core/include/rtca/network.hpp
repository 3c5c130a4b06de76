#pragma once

#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/mta.hpp"
#include "rtca/time.hpp"

namespace rtca {

// A closed automata network at one granularity, ready for exploration:
// an input generator emitting req, the translated processing element
// tracking backlog and mode switches, and one service generator per mode
// visit emitting serv. Produce events (the measured output) are serv events
// that consume a backlog unit; a serv finding the backlog empty -- or small
// enough that the buffer it abstracts could be empty (see wasteMay) -- may
// pass without producing. Wire networks short-circuit req straight to
// produce and have no component at all.
//
// Semantics shared by the engine and the replay oracle:
//   - integer time; at each instant, service emissions happen first, then
//     requests, then mode-switch evaluation (switch chains allowed); after a
//     switch, further serv/req at the same instant are deferred,
//   - a generator constrains, at every emission, the time back to each of
//     its last N events (the virtual origin counts as one until it rotates
//     out); rows give the per-window bounds,
//   - mode-switch guards: sync never fires (closed network); above needs
//     clock >= dwellMin and backlog >= aboveMay; below needs clock >=
//     dwellMin and backlog <= belowMay; timeout needs clock = dwellMax.
//     Time cannot pass while backlog >= aboveForce or <= belowForce (with
//     clock >= dwellMin) or clock = dwellMax: some switch must fire first.
//     The fine model (granularity 1) picks the unique forced switch by
//     priority above > below > timeout; coarse exploration branches over
//     every enabled switch.

struct GeneratorRows {
    std::vector<Time> lower, upper; // row k = bounds for a k-event window
    Count points() const { return static_cast<Count>(lower.size()); }
};

struct PeMode {
    std::string name;

    int aboveTarget = -1;  // -1: no such transition
    int belowTarget = -1;
    int timeoutTarget = -1;
    std::vector<std::pair<std::string, int>> syncTargets;

    Time dwellMin = 0;
    Time dwellMax = kUnbounded;

    // Backlog guard constants in coarse units (collapse to fine at g=1).
    Count aboveMay = 0;   // above exit enabled when backlog >= aboveMay
    Count aboveForce = 0; // time blocked (exit overdue) when backlog >= this
    Count belowMay = 0;   // below exit enabled when backlog <= belowMay
    Count belowForce = 0; // time blocked when backlog <= this (-1: never)

    // Service generator rows for a visit to this mode, applied both between
    // emissions and back to the visit origin. At granularity g a coarse serv
    // stream carries the g-aligned produce instants plus idle service ticks;
    // k consecutive coarse events then stand for anywhere between k and g*k
    // underlying fine events, so row k spans [fine lower(k), fine upper(g*k)].
    // At granularity 1 this is the mode's service curve unchanged.
    GeneratorRows serviceRows;
};

struct Network {
    enum class Kind { Wire, Mta };
    Kind kind = Kind::Mta;
    Count granularity = 1;

    GeneratorRows input; // arrival rows at this granularity

    std::vector<PeMode> modes;
    int initialMode = 0;
    // All coarse initial backlogs consistent with the fine initial value
    // under g(Q-1) < q0 < g(Q+1); singleton at granularity 1.
    std::vector<Count> initialBacklogs{0};

    // A serv event may leave the backlog untouched (be "wasted") while
    // backlog <= wasteMay. One coarse backlog unit stands for up to g
    // buffered fine events, so at backlog 1 the underlying buffer may
    // already be empty and service idles; hence 1 at granularity >= 2 and
    // 0 at granularity 1 (where a serv with work present always produces).
    Count wasteMay = 0;
};

// Wire: produce = req, no component. Used for generator-language checks.
Network make_wire(const XiCurvePair& input);

// Fine network (granularity 1).
Network translate_fine(const MtaSpec& spec, const XiCurvePair& inArr);

// Coarse network at granularity g; g = 1 yields exactly translate_fine.
Network translate_coarse(const MtaSpec& spec, const XiCurvePair& inArr,
                         Count g);

} // namespace rtca
