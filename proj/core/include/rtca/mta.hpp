#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/time.hpp"

namespace rtca {

// Mode-based component model: each mode owns a service curve pair, backlog
// thresholds, and dwell bounds; four switch kinds move between modes.
//
// Conventions tying thresholds to transitions:
//   - a BufferAbove exit fires on backlog > backlogHigh and requires a finite
//     backlogHigh; modes without a BufferAbove transition place no upper
//     bound on the backlog (backlogHigh is ignored / unbounded),
//   - a BufferBelow exit fires on backlog < backlogLow and requires
//     backlogLow >= 1; modes without one place no lower bound,
//   - both backlog exits and Timeout additionally require the mode clock to
//     have reached dwellMin; Sync exits fire immediately at any time,
//   - a finite dwellMax requires a Timeout transition (otherwise the mode
//     would block time at dwellMax with no way out), and vice versa.
//
// Sync transitions need an external partner emitting the signal; analysis
// networks are closed (generator + component + measurement), so sync edges
// are carried through translation but never fire during analysis.

enum class SwitchKind { Sync, Timeout, BufferAbove, BufferBelow };

struct MtaTransition {
    SwitchKind kind = SwitchKind::Timeout;
    std::string signal; // Sync only
    std::string target; // mode id
};

struct Mode {
    std::string id;
    XiCurvePair service;           // psi_i
    Count backlogLow = 0;          // b_i^L
    Count backlogHigh = 0;         // b_i^U; meaningful iff hasHigh
    bool hasLow = false;
    bool hasHigh = false;
    Time dwellMin = 0;             // L_i
    Time dwellMax = kUnbounded;    // U_i
    std::vector<MtaTransition> transitions;

    const MtaTransition* find(SwitchKind k) const;
};

struct MtaSpec {
    std::vector<Mode> modes;
    std::string initialMode;
    Count initialBacklog = 0;

    int mode_index(const std::string& id) const; // -1 when absent
};

// Structural diagnostics; empty means the model is usable by the translations.
std::vector<std::string> validate_mta(const MtaSpec& spec);

// Coarse-event windows within which a fine backlog threshold crossing can
// land. Derived from the sandwich g(Q-1) < q < g(Q+1) relating fine backlog
// q to coarse backlog Q: substituting q = bHigh+1 brackets Q in [YL, YU],
// and q = bLow-1 brackets it in [HL, HU].
struct Thresholds {
    Count YL = 0, YU = 0, HL = 0, HU = 0;
};

// YL = floor((bHigh+1)/g), YU = ceil((bHigh+1)/g),
// HL = floor((bLow-1)/g),  HU = ceil((bLow-1)/g).
// Requires g >= 1 and bLow >= 1 (callers pass bLow = 1 when unused).
Thresholds coarse_thresholds(Count bLow, Count bHigh, Count g);

} // namespace rtca
