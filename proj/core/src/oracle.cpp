#include "rtca/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "rtca/curve_algebra.hpp"
#include "rtca/errors.hpp"

namespace rtca {

namespace {

void spend(std::uint64_t& budget, const char* who) {
    if (budget == 0)
        throw BudgetExceeded(std::string(who) + ": enumeration budget exceeded");
    --budget;
}

// Whether an event at time t can follow the given timestamps: checks every
// window the curve defines over the last min(len, N) of them.
bool append_ok(const XiCurvePair& x, const std::vector<Time>& times, Time t) {
    Count len = static_cast<Count>(times.size());
    Count m = std::min<Count>(len, x.points());
    for (Count k = 1; k <= m; ++k) {
        Time d = t - times[static_cast<std::size_t>(len - k)];
        if (d < x.lower_at(k)) return false;
        Time up = x.upper_at(k);
        if (!is_unbounded(up) && d > up) return false;
    }
    return true;
}

// True when waiting strictly past time t would strand some upper bound.
bool stalled_at(const XiCurvePair& x, const std::vector<Time>& times, Time t) {
    Count len = static_cast<Count>(times.size());
    Count m = std::min<Count>(len, x.points());
    for (Count k = 1; k <= m; ++k) {
        Time up = x.upper_at(k);
        if (!is_unbounded(up) &&
            t - times[static_cast<std::size_t>(len - k)] >= up)
            return true;
    }
    return false;
}

void require_valid_curve(const XiCurvePair& x, const char* who) {
    auto diags = validate(x);
    if (!diags.empty())
        throw std::invalid_argument(std::string(who) + ": invalid curve: " +
                                    diags.front());
}

void require_valid_spec(const MtaSpec& spec, const char* who) {
    auto diags = validate_mta(spec);
    if (!diags.empty())
        throw std::invalid_argument(std::string(who) + ": invalid component: " +
                                    diags.front());
}

} // namespace

std::vector<EventStream> enumerate_streams(const XiCurvePair& x,
                                           Count maxEvents, Time maxTime,
                                           std::uint64_t budget) {
    require_valid_curve(x, "enumerate_streams");
    if (maxEvents < 1)
        throw std::invalid_argument("enumerate_streams: maxEvents must be >= 1");
    if (maxTime < 0)
        throw std::invalid_argument("enumerate_streams: maxTime negative");

    std::vector<EventStream> out;
    std::vector<Time> times{0};
    auto rec = [&](auto&& self) -> void {
        spend(budget, "enumerate_streams");
        out.push_back(EventStream{times});
        if (static_cast<Count>(times.size()) >= maxEvents) return;
        for (Time t = times.back(); t <= maxTime; ++t) {
            spend(budget, "enumerate_streams");
            // Once an upper bound is passed, every later time fails too.
            bool over = false;
            Count len = static_cast<Count>(times.size());
            Count m = std::min<Count>(len, x.points());
            for (Count k = 1; k <= m && !over; ++k) {
                Time up = x.upper_at(k);
                if (!is_unbounded(up) &&
                    t - times[static_cast<std::size_t>(len - k)] > up)
                    over = true;
            }
            if (over) break;
            if (!append_ok(x, times, t)) continue;
            times.push_back(t);
            self(self);
            times.pop_back();
        }
    };
    rec(rec);
    return out;
}

std::vector<EventStream> extensible_streams(const XiCurvePair& x, Count events,
                                            std::uint64_t budget) {
    require_valid_curve(x, "extensible_streams");
    if (events < 0)
        throw std::invalid_argument("extensible_streams: events negative");

    const Count N = x.points();
    Time cap = 0;
    for (Count k = 1; k <= N; ++k) {
        cap = std::max(cap, x.lower_at(k));
        if (!is_unbounded(x.upper_at(k))) cap = std::max(cap, x.upper_at(k));
    }
    ++cap; // a saturated offset decides every remaining comparison

    // A tail signature is everything the future of a stream depends on: how
    // many timestamps the curve still remembers (the origin counts until it
    // rotates out) and the saturated offsets from the newest timestamp back
    // to each older one.
    using Sig = std::vector<Time>; // [m, off_1, ..., off_{m-1}]

    auto delay_ok = [&](const Sig& sig, Time d) {
        Time m = sig[0];
        for (Time k = 1; k <= m; ++k) {
            Time back =
                k == 1 ? d
                       : std::min<Time>(d + sig[static_cast<std::size_t>(k) - 1],
                                        cap);
            if (back < x.lower_at(k)) return false;
            Time up = x.upper_at(k);
            if (!is_unbounded(up) && back > up) return false;
        }
        return true;
    };
    auto step_sig = [&](const Sig& sig, Time d) {
        Time nm = std::min<Time>(sig[0] + 1, N);
        Sig nx{nm};
        for (Time j = 1; j <= nm - 1; ++j)
            nx.push_back(j == 1
                             ? d
                             : std::min<Time>(
                                   d + sig[static_cast<std::size_t>(j) - 1], cap));
        return nx;
    };

    // Reachable signature graph, then the greatest fixpoint of "has a live
    // successor": signatures surviving it start an infinite extension.
    std::map<Sig, int> id;
    std::vector<Sig> sigs;
    std::vector<std::vector<int>> succ;
    auto intern = [&](const Sig& s) {
        auto [it, fresh] = id.emplace(s, static_cast<int>(sigs.size()));
        if (fresh) {
            sigs.push_back(s);
            succ.emplace_back();
        }
        return it->second;
    };
    intern(Sig{1});
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        for (Time d = 0; d <= cap; ++d) {
            spend(budget, "extensible_streams");
            if (!delay_ok(sigs[i], d)) continue;
            int j = intern(step_sig(sigs[i], d));
            if (std::find(succ[i].begin(), succ[i].end(), j) == succ[i].end())
                succ[i].push_back(j);
        }
    }
    std::vector<char> live(sigs.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            if (!live[i]) continue;
            bool any = false;
            for (int j : succ[i])
                if (live[static_cast<std::size_t>(j)]) {
                    any = true;
                    break;
                }
            if (!any) {
                live[i] = 0;
                changed = true;
            }
        }
    }

    // List the streams of the requested length whose tail signature
    // survived. A valid saturated delay would stand for infinitely many
    // real delays, which cannot be listed.
    std::vector<EventStream> out;
    std::vector<Time> times{0};
    Sig sig{1};
    auto rec = [&](auto&& self) -> void {
        spend(budget, "extensible_streams");
        if (static_cast<Count>(times.size()) == events + 1) {
            auto it = id.find(sig);
            if (it != id.end() && live[static_cast<std::size_t>(it->second)])
                out.push_back(EventStream{times});
            return;
        }
        for (Time d = 0; d <= cap; ++d) {
            if (!delay_ok(sig, d)) continue;
            if (d == cap)
                throw BudgetExceeded(
                    "extensible_streams: unbounded delays admit infinitely "
                    "many streams");
            Sig saved = sig;
            sig = step_sig(saved, d);
            times.push_back(times.back() + d);
            self(self);
            times.pop_back();
            sig = std::move(saved);
        }
    };
    rec(rec);
    return out;
}

bool is_refinement(const EventStream& fine, const EventStream& coarse,
                   Count g) {
    EventStream a = abstract_stream(fine, g);
    std::size_t n = std::min(a.times.size(), coarse.times.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.times[i] != coarse.times[i]) return false;
    return true;
}

namespace {

// Deterministic switch chain at one instant, shared by the replay and the
// exhaustive recursion: highest enabled priority (above, below, timeout)
// fires, repeatedly, until nothing is enabled. Sync transitions never fire
// in a closed network.
int run_switch_chain(const MtaSpec& spec, Time t, int& mode, Count q,
                     Time& visitStart, std::vector<ModeSwitchEvent>* trace) {
    const int chainCap = static_cast<int>(spec.modes.size()) * 4;
    int chain = 0;
    while (true) {
        const Mode& m = spec.modes[static_cast<std::size_t>(mode)];
        Time dwell = t - visitStart;
        const MtaTransition* take = nullptr;
        SwitchKind kind = SwitchKind::Timeout;
        if (const auto* ta = m.find(SwitchKind::BufferAbove);
            ta && dwell >= m.dwellMin && q >= m.backlogHigh + 1) {
            take = ta;
            kind = SwitchKind::BufferAbove;
        } else if (const auto* tb = m.find(SwitchKind::BufferBelow);
                   tb && dwell >= m.dwellMin && q <= m.backlogLow - 1) {
            take = tb;
            kind = SwitchKind::BufferBelow;
        } else if (const auto* tt = m.find(SwitchKind::Timeout);
                   tt && !is_unbounded(m.dwellMax) && dwell == m.dwellMax) {
            take = tt;
            kind = SwitchKind::Timeout;
        }
        if (!take) return chain;
        if (++chain > chainCap)
            throw Error("mode switch chain at time " + std::to_string(t) +
                        " exceeds " + std::to_string(chainCap) + " switches");
        if (trace)
            trace->push_back(ModeSwitchEvent{t, m.id, take->target, kind});
        mode = spec.mode_index(take->target);
        visitStart = t;
    }
}

const EventStream& empty_stream() {
    static const EventStream s{};
    return s;
}

using StreamFor =
    std::function<const EventStream&(std::size_t visit, const std::string&)>;

SimResult replay(const MtaSpec& spec, const EventStream& input,
                 const StreamFor& stream_for, Time maxTime) {
    require_valid_spec(spec, "simulate_mta");
    int mode = spec.mode_index(spec.initialMode);
    Count q = spec.initialBacklog;
    Time visitStart = 0;
    std::size_t visit = 0;
    const EventStream* serv =
        &stream_for(visit, spec.modes[static_cast<std::size_t>(mode)].id);
    std::size_t servIdx = 0; // service timestamps consumed, incl. the origin
    std::size_t inIdx = 0;
    SimResult res;

    for (Time t = 0; t <= maxTime; ++t) {
        const Mode& m = spec.modes[static_cast<std::size_t>(mode)];

        // Service phase: consume every emission due now, re-checking each
        // against the visited mode's curve.
        if (servIdx + 1 < serv->times.size() &&
            visitStart + serv->times[servIdx + 1] < t)
            throw Error("service stream for visit " + std::to_string(visit) +
                        " schedules an event during the switch instant of "
                        "mode '" + m.id + "'");
        while (servIdx + 1 < serv->times.size() &&
               visitStart + serv->times[servIdx + 1] == t) {
            std::vector<Time> prefix(
                serv->times.begin(),
                serv->times.begin() + static_cast<std::ptrdiff_t>(servIdx + 1));
            if (!append_ok(m.service, prefix, serv->times[servIdx + 1]))
                throw Error("service stream for visit " + std::to_string(visit) +
                            " violates the service curve of mode '" + m.id +
                            "'");
            ++servIdx;
            if (q >= 1) {
                --q;
                res.output.times.push_back(t);
            }
        }

        // Request phase.
        while (inIdx + 1 < input.times.size() && input.times[inIdx + 1] == t) {
            ++inIdx;
            ++q;
        }

        // Switch phase; each switch starts a fresh visit with a fresh
        // service stream.
        if (run_switch_chain(spec, t, mode, q, visitStart, &res.switches) > 0) {
            visit = res.switches.size();
            serv = &stream_for(visit, spec.modes[static_cast<std::size_t>(mode)].id);
            servIdx = 0;
        }

        // The stream must not stall past an upper bound of the current
        // mode's curve while time keeps flowing.
        if (t < maxTime) {
            const Mode& cm = spec.modes[static_cast<std::size_t>(mode)];
            std::vector<Time> prefix(
                serv->times.begin(),
                serv->times.begin() + static_cast<std::ptrdiff_t>(servIdx + 1));
            if (stalled_at(cm.service, prefix, t - visitStart))
                throw Error("service stream for visit " + std::to_string(visit) +
                            " stalls past an upper bound of mode '" + cm.id +
                            "'");
        }
    }
    res.finalMode = spec.modes[static_cast<std::size_t>(mode)].id;
    res.finalBacklog = q;
    return res;
}

} // namespace

SimResult simulate_mta(const MtaSpec& spec, const EventStream& input,
                       const std::vector<EventStream>& perVisitService,
                       Time maxTime) {
    return replay(spec, input,
                  [&perVisitService](std::size_t visit,
                                     const std::string&) -> const EventStream& {
                      return visit < perVisitService.size()
                                 ? perVisitService[visit]
                                 : empty_stream();
                  },
                  maxTime);
}

SimResult simulate_mta(const MtaSpec& spec, const EventStream& input,
                       const std::map<std::string, EventStream>& perModeService,
                       Time maxTime) {
    return replay(spec, input,
                  [&perModeService](std::size_t,
                                    const std::string& id) -> const EventStream& {
                      auto it = perModeService.find(id);
                      return it == perModeService.end() ? empty_stream()
                                                        : it->second;
                  },
                  maxTime);
}

OracleCurves oracle_output_curves(const MtaSpec& spec, const XiCurvePair& inArr,
                                  Count maxEvents, Time maxTime, Count n,
                                  std::uint64_t budget) {
    require_valid_spec(spec, "oracle_output_curves");
    require_valid_curve(inArr, "oracle_output_curves");
    if (n < 1 || maxEvents < 1 || maxTime < 0)
        throw std::invalid_argument("oracle_output_curves: bad box");

    // Depth-first walk over every instant-by-instant interleaving: any
    // number of service emissions, then any number of requests, then the
    // deterministic switch chain, then one time unit — ending a run when
    // the box edge is reached or some generator cannot stretch further.
    struct Rec {
        const MtaSpec& spec;
        const XiCurvePair& inArr;
        Count maxEvents;
        Time maxTime;
        Count n;
        std::uint64_t& budget;

        std::vector<Time> in{0};      // absolute request times
        std::vector<Time> servRel{0}; // current visit, relative to its start
        std::vector<Time> out{0};     // absolute produce times
        int mode = 0;
        Count q = 0;
        Time visitStart = 0;

        std::vector<Time> minW, maxW;
        std::vector<char> seen;

        const Mode& cur() const {
            return spec.modes[static_cast<std::size_t>(mode)];
        }

        void record(Time t) {
            out.push_back(t);
            Count last = static_cast<Count>(out.size()) - 1;
            for (Count k = 1; k <= std::min(last, n); ++k) {
                Time d = t - out[static_cast<std::size_t>(last - k)];
                auto ki = static_cast<std::size_t>(k);
                if (!seen[ki]) {
                    seen[ki] = 1;
                    minW[ki] = maxW[ki] = d;
                } else {
                    minW[ki] = std::min(minW[ki], d);
                    maxW[ki] = std::max(maxW[ki], d);
                }
            }
        }

        void choose_serv(Time t) {
            spend(budget, "oracle_output_curves");
            choose_req(t);
            if (append_ok(cur().service, servRel, t - visitStart)) {
                servRel.push_back(t - visitStart);
                bool produced = q >= 1;
                if (produced) {
                    --q;
                    record(t);
                }
                choose_serv(t);
                if (produced) {
                    ++q;
                    out.pop_back();
                }
                servRel.pop_back();
            }
        }

        void choose_req(Time t) {
            spend(budget, "oracle_output_curves");
            do_switches(t);
            if (static_cast<Count>(in.size()) < maxEvents &&
                append_ok(inArr, in, t)) {
                in.push_back(t);
                ++q;
                choose_req(t);
                --q;
                in.pop_back();
            }
        }

        void do_switches(Time t) {
            int savedMode = mode;
            Time savedStart = visitStart;
            std::vector<Time> savedServ;
            if (run_switch_chain(spec, t, mode, q, visitStart, nullptr) > 0) {
                savedServ.swap(servRel);
                servRel = {0};
            }
            bool end = t >= maxTime;
            if (!end && stalled_at(cur().service, servRel, t - visitStart))
                end = true;
            if (!end && static_cast<Count>(in.size()) < maxEvents &&
                stalled_at(inArr, in, t))
                end = true;
            if (!end && !is_unbounded(cur().dwellMax) &&
                t - visitStart >= cur().dwellMax)
                end = true;
            if (!end) choose_serv(t + 1);
            if (!savedServ.empty()) servRel.swap(savedServ);
            mode = savedMode;
            visitStart = savedStart;
        }
    };

    Rec rec{spec, inArr, maxEvents, maxTime, n, budget};
    rec.mode = spec.mode_index(spec.initialMode);
    rec.q = spec.initialBacklog;
    rec.minW.assign(static_cast<std::size_t>(n) + 1, 0);
    rec.maxW.assign(static_cast<std::size_t>(n) + 1, 0);
    rec.seen.assign(static_cast<std::size_t>(n) + 1, 0);
    rec.choose_serv(0);

    OracleCurves oc;
    oc.requested = n;
    oc.curve.granularity = 1;
    for (Count k = 1; k <= n; ++k) {
        auto ki = static_cast<std::size_t>(k);
        if (!rec.seen[ki]) break;
        oc.curve.lower.push_back(rec.minW[ki]);
        oc.curve.upper.push_back(rec.maxW[ki]);
    }
    return oc;
}

} // namespace rtca
