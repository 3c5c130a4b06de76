#include "rtca/mta.hpp"

#include <set>
#include <stdexcept>

#include "rtca/curve_algebra.hpp"

namespace rtca {

const MtaTransition* Mode::find(SwitchKind k) const {
    for (const auto& t : transitions)
        if (t.kind == k) return &t;
    return nullptr;
}

int MtaSpec::mode_index(const std::string& id) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].id == id) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> validate_mta(const MtaSpec& spec) {
    std::vector<std::string> out;
    auto report = [&out](const std::string& m) { out.push_back(m); };

    if (spec.modes.empty()) report("no modes defined");
    if (spec.initialBacklog < 0) report("initial backlog negative");

    std::set<std::string> ids;
    for (const auto& m : spec.modes)
        if (!ids.insert(m.id).second) report("duplicate mode id '" + m.id + "'");

    if (spec.mode_index(spec.initialMode) < 0)
        report("initial mode '" + spec.initialMode + "' not defined");

    for (const auto& m : spec.modes) {
        const std::string where = "mode '" + m.id + "': ";

        for (const auto& d : validate(m.service)) report(where + "service " + d);

        if (m.dwellMin < 0) report(where + "dwellMin negative");
        if (!is_unbounded(m.dwellMax) && m.dwellMax < m.dwellMin)
            report(where + "dwellMax < dwellMin");

        if (m.hasLow && m.hasHigh && m.backlogLow > m.backlogHigh)
            report(where + "blow > bhigh");

        int nTimeout = 0, nAbove = 0, nBelow = 0;
        for (const auto& t : m.transitions) {
            if (spec.mode_index(t.target) < 0)
                report(where + "transition target '" + t.target + "' not defined");
            switch (t.kind) {
            case SwitchKind::Timeout: ++nTimeout; break;
            case SwitchKind::BufferAbove: ++nAbove; break;
            case SwitchKind::BufferBelow: ++nBelow; break;
            case SwitchKind::Sync:
                if (t.signal.empty()) report(where + "sync transition without signal");
                break;
            }
        }
        if (nTimeout > 1) report(where + "more than one timeout transition");
        if (nAbove > 1) report(where + "more than one above transition");
        if (nBelow > 1) report(where + "more than one below transition");

        if (nAbove > 0 && !m.hasHigh)
            report(where + "above transition needs bhigh");
        if (nBelow > 0 && (!m.hasLow || m.backlogLow < 1))
            report(where + "below transition needs blow >= 1");
        if (nTimeout > 0 && is_unbounded(m.dwellMax))
            report(where + "timeout transition needs a finite dwell upper bound");
        if (nTimeout == 0 && !is_unbounded(m.dwellMax))
            report(where + "finite dwell upper bound needs a timeout transition");
    }
    return out;
}

Thresholds coarse_thresholds(Count bLow, Count bHigh, Count g) {
    if (g < 1) throw std::invalid_argument("coarse_thresholds: g must be >= 1");
    if (bLow < 1) throw std::invalid_argument("coarse_thresholds: bLow must be >= 1");
    if (bHigh < 0) throw std::invalid_argument("coarse_thresholds: bHigh negative");
    Thresholds t;
    t.YL = (bHigh + 1) / g;
    t.YU = (bHigh + 1 + g - 1) / g;
    t.HL = (bLow - 1) / g;
    t.HU = (bLow - 1 + g - 1) / g;
    return t;
}

} // namespace rtca
