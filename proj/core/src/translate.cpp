#include "rtca/network.hpp"

#include <stdexcept>

#include "rtca/curve_algebra.hpp"

namespace rtca {

namespace {

GeneratorRows rows_from(const XiCurvePair& x) {
    GeneratorRows r;
    r.lower = x.lower;
    r.upper = x.upper;
    return r;
}

} // namespace

Network make_wire(const XiCurvePair& input) {
    if (!is_valid(input))
        throw std::invalid_argument("make_wire: invalid input curve");
    Network net;
    net.kind = Network::Kind::Wire;
    net.granularity = input.granularity;
    net.input = rows_from(input);
    return net;
}

Network translate_fine(const MtaSpec& spec, const XiCurvePair& inArr) {
    return translate_coarse(spec, inArr, 1);
}

Network translate_coarse(const MtaSpec& spec, const XiCurvePair& inArr,
                         Count g) {
    if (g < 1) throw std::invalid_argument("translate: g must be >= 1");
    {
        auto diags = validate_mta(spec);
        if (!diags.empty())
            throw std::invalid_argument("translate: invalid component: " +
                                        diags.front());
    }
    if (inArr.granularity != 1)
        throw std::invalid_argument("translate: arrival curve must be fine");
    if (inArr.points() < g || [&] {
            for (const auto& m : spec.modes)
                if (m.service.points() < g) return true;
            return false;
        }())
        throw std::invalid_argument(
            "translate: granularity exceeds a curve's point count");

    Network net;
    net.kind = Network::Kind::Mta;
    net.granularity = g;
    net.input = rows_from(sample(inArr, g));
    net.initialMode = spec.mode_index(spec.initialMode);
    net.wasteMay = g >= 2 ? 1 : 0;

    net.initialBacklogs.clear();
    for (Count q0 = 0; g * (q0 - 1) < spec.initialBacklog; ++q0)
        if (spec.initialBacklog < g * (q0 + 1))
            net.initialBacklogs.push_back(q0);

    for (const auto& m : spec.modes) {
        PeMode pm;
        pm.name = m.id;
        pm.dwellMin = m.dwellMin;
        pm.dwellMax = m.dwellMax;

        for (const auto& t : m.transitions) {
            int tgt = spec.mode_index(t.target);
            switch (t.kind) {
            case SwitchKind::BufferAbove: pm.aboveTarget = tgt; break;
            case SwitchKind::BufferBelow: pm.belowTarget = tgt; break;
            case SwitchKind::Timeout: pm.timeoutTarget = tgt; break;
            case SwitchKind::Sync: pm.syncTargets.emplace_back(t.signal, tgt); break;
            }
        }

        // Guard constants. Coarse and fine backlog are tied by the sandwich
        // q in (g(Q-1) - phi, g(Q+1) - phi), where phi in [0, g) absorbs an
        // initial backlog that is not a multiple of g. An exit may fire at
        // every coarse backlog compatible with a fine backlog past its
        // threshold (q >= bU+1 gives Q >= floor((bU+1)/g); q <= bL-1 gives
        // Q <= ceil((bL-1)/g) + 1, the +1 being the phi slack -- absent at
        // g = 1). Time is blocked only once no compatible fine backlog may
        // still linger (q <= bU allows Q up to ceil((bU-1)/g) + 1, q >= bL
        // allows Q down to floor(bL/g)). All collapse to the exact fine
        // tests at g = 1.
        Thresholds th = coarse_thresholds(m.hasLow ? m.backlogLow : 1,
                                          m.hasHigh ? m.backlogHigh : 0, g);
        if (pm.aboveTarget >= 0) {
            pm.aboveMay = th.YL;
            pm.aboveForce = (m.backlogHigh - 1 + g - 1) / g + 2;
        } else {
            pm.aboveMay = kUnbounded;
            pm.aboveForce = kUnbounded;
        }
        if (pm.belowTarget >= 0) {
            pm.belowMay = g == 1 ? th.HU : th.HU + 1;
            pm.belowForce = m.backlogLow / g - 1;
        } else {
            pm.belowMay = -1;
            pm.belowForce = -1;
        }

        // Service rows. The coarse serv stream carries every g-th fine
        // produce instant exactly, padded with the idle ticks of the fine
        // service between them (wasted coarse emissions, see wasteMay): drop
        // the g-1 intermediate produces from the fine service stream and keep
        // the rest. Consecutive kept events are then 1..g fine events apart,
        // so k coarse steps span 1..g*k fine ones: row k is
        // [fine lower(k), fine upper(g*k)]. At g = 1 nothing is dropped and
        // the rows are the service curve itself.
        Count ns = m.service.points() / g;
        pm.serviceRows.lower.clear();
        pm.serviceRows.upper.clear();
        for (Count k = 1; k <= ns; ++k) {
            pm.serviceRows.lower.push_back(m.service.lower_at(k));
            pm.serviceRows.upper.push_back(m.service.upper_at(g * k));
        }

        net.modes.push_back(std::move(pm));
    }
    return net;
}

} // namespace rtca
