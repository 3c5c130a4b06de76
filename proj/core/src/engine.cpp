#include "rtca/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "rtca/curve_algebra.hpp"
#include "rtca/errors.hpp"

namespace rtca {

namespace {

// Packed state layout (little-endian-free: all access via memcpy):
//   [0]  mode            u8
//   [1]  flags           u8   bits1-2 = instant phase (0 serv, 1 req, 2 switch)
//   [2]  backlog         u16
//   [4]  dwell           u16  saturated per mode
//   [6]  thetaIn         u8   input timestamps remembered (capped at Nin)
//   [7]  thetaServ       u8   service timestamps remembered (capped at Ns+1)
//   [8]  emitted         u16  boxed input-event counter / fixed-stream index
//   [10] t               u32  absolute time (boxed only)
//   [14] input clocks    u16 * Nin      (since-last, then inter-event gaps)
//   ...  service clocks  u16 * Ns
//
// Every clock saturates at a cap strictly above the largest finite constant
// it is compared against, so saturated values decide every guard exactly and
// the reachable graph is finite. The backlog is never merged: growing past
// its cap raises BudgetExceeded, which keeps all reported extrema exact.

constexpr std::uint32_t kNoSlot = 0xFFFFFFFFu;
constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

inline std::uint16_t rd16(const std::uint8_t* p) {
    std::uint16_t v;
    std::memcpy(&v, p, 2);
    return v;
}
inline void wr16(std::uint8_t* p, std::uint16_t v) { std::memcpy(p, &v, 2); }
inline std::uint32_t rd32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}
inline void wr32(std::uint8_t* p, std::uint32_t v) { std::memcpy(p, &v, 4); }

inline std::uint64_t fnv1a(const std::uint8_t* p, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

enum Phase : std::uint8_t { kPhaseServ = 0, kPhaseReq = 1, kPhaseSwitch = 2 };

inline std::uint8_t phase_of(const std::uint8_t* s) { return (s[1] >> 1) & 3; }
inline void set_phase(std::uint8_t* s, std::uint8_t ph) {
    s[1] = static_cast<std::uint8_t>(ph << 1);
}

} // namespace

struct Exploration::Impl {
    Network net;
    EngineLimits lim;
    bool boxed = false;
    bool fixedIn = false;
    bool trackEmitted = false;
    std::vector<Time> fixedTimes; // absolute, [0] = origin

    int Nin = 0; // input clocks kept (0 when the input is a fixed stream)
    int Ns = 0;  // service clocks kept (max over modes)
    std::size_t stateBytes = 0;
    std::size_t offIn = 0, offServ = 0;
    Time genCap = 0;  // clock saturation point
    Count qCap = 0;   // backlog values beyond this raise BudgetExceeded
    std::vector<Time> dwellCap;

    std::vector<std::uint8_t> arena;
    std::uint64_t count = 0;
    std::vector<std::uint32_t> table;
    std::uint64_t tableMask = 0;
    std::uint64_t tableUsed = 0;

    std::vector<std::uint64_t> edgeOff; // CSR, size count+1 after build
    std::vector<std::uint32_t> edgeTo;
    std::vector<std::uint8_t> edgeFl; // bit0 produce, bit1 unit duration
    std::vector<std::uint32_t> initials;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> produceEdges;
    std::vector<std::uint8_t> anchor;

    EngineStats st;

    // Min-window DP cache: dist at the cached layer (layer j = j produce
    // events seen since an anchor).
    Count minLayer = -1;
    std::vector<std::int64_t> minD;

    // Max-window DP cache over the condensation of the produce-free subgraph.
    bool sccReady = false;
    std::int32_t sccCount = 0;
    std::vector<std::int32_t> scc;
    std::vector<std::uint8_t> sccPump;
    std::vector<std::uint64_t> sccAdjOff;
    std::vector<std::pair<std::int32_t, std::int8_t>> sccAdj; // (target, dur)
    Count maxLayer = -1;
    std::vector<std::int64_t> maxVal;

    const std::uint8_t* at(std::uint64_t i) const {
        return arena.data() + i * stateBytes;
    }

    // ----- generator window helpers -------------------------------------

    // back(k), k = 1..m, saturated: time since the k-th most recent
    // remembered timestamp of the generator section at `base`.
    // base[0] = since-last, base[1..] = gaps.
    Time back_at(const std::uint8_t* base, int k) const {
        Time b = rd16(base);
        for (int j = 0; j < k - 1; ++j) {
            b += rd16(base + 2 + 2 * j);
            if (b > genCap) return genCap;
        }
        return b;
    }

    bool input_emit_ok(const std::uint8_t* s) const {
        const std::uint8_t* base = s + offIn;
        int m = s[6];
        Time b = 0;
        for (int k = 1; k <= m; ++k) {
            b = k == 1 ? rd16(base) : std::min<Time>(b + rd16(base + 2 * (k - 1)),
                                                     genCap);
            Time lo = net.input.lower[k - 1], up = net.input.upper[k - 1];
            if (b < lo) return false;
            if (!is_unbounded(up) && b > up) return false;
        }
        return true;
    }

    bool input_forced(const std::uint8_t* s) const {
        const std::uint8_t* base = s + offIn;
        int m = s[6];
        Time b = 0;
        for (int k = 1; k <= m; ++k) {
            b = k == 1 ? rd16(base) : std::min<Time>(b + rd16(base + 2 * (k - 1)),
                                                     genCap);
            Time up = net.input.upper[k - 1];
            if (!is_unbounded(up) && b >= up) return true;
        }
        return false;
    }

    bool serv_emit_ok(const std::uint8_t* s) const {
        const PeMode& pm = net.modes[s[0]];
        const std::uint8_t* base = s + offServ;
        int theta = s[7];
        int m = std::min<int>(theta, static_cast<int>(pm.serviceRows.points()));
        Time b = 0;
        for (int k = 1; k <= m; ++k) {
            b = k == 1 ? rd16(base) : std::min<Time>(b + rd16(base + 2 * (k - 1)),
                                                     genCap);
            if (b < pm.serviceRows.lower[k - 1]) return false;
            Time up = pm.serviceRows.upper[k - 1];
            if (!is_unbounded(up) && b > up) return false;
        }
        return true;
    }

    bool serv_forced(const std::uint8_t* s) const {
        const PeMode& pm = net.modes[s[0]];
        const std::uint8_t* base = s + offServ;
        int theta = s[7];
        int m = std::min<int>(theta, static_cast<int>(pm.serviceRows.points()));
        Time b = 0;
        for (int k = 1; k <= m; ++k) {
            b = k == 1 ? rd16(base) : std::min<Time>(b + rd16(base + 2 * (k - 1)),
                                                     genCap);
            Time up = pm.serviceRows.upper[k - 1];
            if (!is_unbounded(up) && b >= up) return true;
        }
        return false;
    }

    // ----- interning -----------------------------------------------------

    void grow_table() {
        std::size_t cap = table.empty() ? (1u << 16) : table.size() * 2;
        table.assign(cap, kNoSlot);
        tableMask = cap - 1;
        tableUsed = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t h = fnv1a(at(i), stateBytes) & tableMask;
            while (table[h] != kNoSlot) h = (h + 1) & tableMask;
            table[h] = static_cast<std::uint32_t>(i);
            ++tableUsed;
        }
    }

    std::uint32_t intern(const std::uint8_t* s) {
        if (tableUsed * 10 >= table.size() * 7) grow_table();
        std::uint64_t h = fnv1a(s, stateBytes) & tableMask;
        while (table[h] != kNoSlot) {
            if (std::memcmp(at(table[h]), s, stateBytes) == 0) return table[h];
            h = (h + 1) & tableMask;
        }
        if (count >= lim.maxStates)
            throw BudgetExceeded("engine: state budget of " +
                                 std::to_string(lim.maxStates) + " exceeded");
        arena.insert(arena.end(), s, s + stateBytes);
        std::uint32_t idx = static_cast<std::uint32_t>(count++);
        table[h] = idx;
        ++tableUsed;
        anchor.push_back(0);
        return idx;
    }

    // ----- construction --------------------------------------------------

    void prepare(const Network& n, const EngineLimits& l,
                 const EventStream* fixed) {
        net = n;
        lim = l;
        boxed = !is_unbounded(lim.horizon);
        fixedIn = fixed != nullptr;
        if (fixedIn) {
            if (!boxed)
                throw std::invalid_argument(
                    "engine: a fixed input stream requires a finite horizon");
            fixedTimes = fixed->times;
        }
        if (boxed && (lim.horizon < 0 || lim.horizon > 2'000'000'000))
            throw std::invalid_argument("engine: horizon out of range");
        trackEmitted = boxed && !fixedIn && lim.maxInputEvents >= 0;
        if (trackEmitted && lim.maxInputEvents > 60000)
            throw std::invalid_argument("engine: input event cap out of range");

        Nin = fixedIn ? 0 : static_cast<int>(net.input.points());
        Ns = 0;
        genCap = 0;
        auto eat_rows = [&](const GeneratorRows& r) {
            for (Count k = 1; k <= r.points(); ++k) {
                if (!is_unbounded(r.upper[k - 1]))
                    genCap = std::max(genCap, r.upper[k - 1]);
                genCap = std::max(genCap, r.lower[k - 1]);
            }
        };
        if (!fixedIn) eat_rows(net.input);
        Count qGuard = 0;
        for (const auto& pm : net.modes) {
            Ns = std::max(Ns, static_cast<int>(pm.serviceRows.points()));
            eat_rows(pm.serviceRows);
            if (!is_unbounded(pm.aboveForce))
                qGuard = std::max(qGuard, pm.aboveForce);
            if (!is_unbounded(pm.aboveMay)) qGuard = std::max(qGuard, pm.aboveMay);
            qGuard = std::max(qGuard, pm.belowMay + 1);
            qGuard = std::max(qGuard, pm.belowForce + 1);
        }
        for (Count q0 : net.initialBacklogs) qGuard = std::max(qGuard, q0);
        ++genCap;
        if (genCap > 65000)
            throw std::invalid_argument(
                "engine: curve constants too large for packed clocks");
        qCap = qGuard + 300;
        if (trackEmitted) {
            Count q0max = 0;
            for (Count q0 : net.initialBacklogs) q0max = std::max(q0max, q0);
            qCap = std::max(qCap, q0max + lim.maxInputEvents + 2);
        }
        if (qCap > 65000)
            throw std::invalid_argument(
                "engine: backlog bound too large for packed states");

        dwellCap.clear();
        for (const auto& pm : net.modes) {
            Time dc = is_unbounded(pm.dwellMax) ? pm.dwellMin : pm.dwellMax;
            if (dc > 65000)
                throw std::invalid_argument(
                    "engine: dwell constants too large for packed clocks");
            dwellCap.push_back(dc);
        }
        if (net.modes.size() > 250)
            throw std::invalid_argument("engine: too many modes");

        offIn = 14;
        offServ = offIn + 2 * static_cast<std::size_t>(Nin);
        stateBytes = offServ + 2 * static_cast<std::size_t>(Ns);
        grow_table();
    }

    void seed() {
        std::vector<std::uint8_t> s(stateBytes, 0);
        s[0] = static_cast<std::uint8_t>(net.modes.empty() ? 0 : net.initialMode);
        s[1] = 0; // serv phase
        s[6] = Nin > 0 ? 1 : 0;
        s[7] = Ns > 0 && !net.modes.empty() ? 1 : 0;
        for (Count q0 : net.initialBacklogs) {
            wr16(s.data() + 2, static_cast<std::uint16_t>(q0));
            std::uint32_t idx = intern(s.data());
            initials.push_back(idx);
            anchor[idx] = 1;
        }
    }

    void expand(std::uint32_t si, std::vector<std::uint8_t>& cur,
                std::vector<std::uint8_t>& nxt) {
        std::memcpy(cur.data(), at(si), stateBytes);
        const std::uint8_t* s = cur.data();
        const bool isMta = net.kind == Network::Kind::Mta && !net.modes.empty();
        const std::uint8_t ph = phase_of(s);
        const Count q = rd16(s + 2);
        const Time dwell = rd16(s + 4);
        const Time t = rd32(s + 10);
        const PeMode* pm = isMta ? &net.modes[s[0]] : nullptr;

        auto add = [&](bool produce, bool unit) {
            std::uint32_t to = intern(nxt.data());
            edgeTo.push_back(to);
            edgeFl.push_back(static_cast<std::uint8_t>((produce ? 1 : 0) |
                                                       (unit ? 2 : 0)));
            if (produce) {
                anchor[to] = 1;
                produceEdges.emplace_back(si, to);
            }
            ++st.edges;
        };

        // Service emission (phase 0 only; bursts chain through successors).
        // A service event may be wasted whenever the backlog is small enough
        // that the underlying buffer could be empty (backlog <= wasteMay);
        // at granularity 1 that is exactly backlog 0, so the produce/waste
        // choice is deterministic there.
        if (isMta && ph == kPhaseServ && s[7] > 0 && serv_emit_ok(s)) {
            auto servSucc = [&](bool produce) {
                std::memcpy(nxt.data(), s, stateBytes);
                std::uint8_t* n = nxt.data();
                int theta = s[7];
                n[7] = static_cast<std::uint8_t>(std::min(theta + 1, Ns + 1));
                std::uint8_t* base = n + offServ;
                for (int j = Ns - 1; j >= 1; --j)
                    wr16(base + 2 * j, rd16(base + 2 * (j - 1)));
                wr16(base, 0);
                if (produce) wr16(n + 2, static_cast<std::uint16_t>(q - 1));
                add(produce, false);
            };
            if (q >= 1) servSucc(true);
            if (q <= net.wasteMay) servSucc(false);
        }

        // Request (phases 0-1).
        if (ph <= kPhaseReq) {
            if (fixedIn) {
                Count idx = rd16(s + 8);
                if (idx + 1 < static_cast<Count>(fixedTimes.size()) &&
                    fixedTimes[static_cast<std::size_t>(idx) + 1] == t) {
                    std::memcpy(nxt.data(), s, stateBytes);
                    std::uint8_t* n = nxt.data();
                    wr16(n + 8, static_cast<std::uint16_t>(idx + 1));
                    if (isMta) {
                        if (q + 1 > qCap)
                            throw BudgetExceeded(
                                "engine: backlog grew past the exactly "
                                "analyzable bound");
                        wr16(n + 2, static_cast<std::uint16_t>(q + 1));
                    }
                    set_phase(n, kPhaseReq);
                    add(net.kind == Network::Kind::Wire, false);
                }
            } else if (!(trackEmitted && rd16(s + 8) >=
                                             static_cast<Count>(
                                                 lim.maxInputEvents)) &&
                       input_emit_ok(s)) {
                std::memcpy(nxt.data(), s, stateBytes);
                std::uint8_t* n = nxt.data();
                int theta = s[6];
                n[6] = static_cast<std::uint8_t>(std::min(theta + 1, Nin));
                std::uint8_t* base = n + offIn;
                for (int j = Nin - 1; j >= 1; --j)
                    wr16(base + 2 * j, rd16(base + 2 * (j - 1)));
                wr16(base, 0);
                if (trackEmitted) wr16(n + 8, static_cast<std::uint16_t>(rd16(s + 8) + 1));
                if (isMta) {
                    if (q + 1 > qCap)
                        throw BudgetExceeded(
                            "engine: backlog grew past the exactly analyzable "
                            "bound");
                    wr16(n + 2, static_cast<std::uint16_t>(q + 1));
                }
                set_phase(n, kPhaseReq);
                add(net.kind == Network::Kind::Wire, false);
            }
        }

        // Mode switches (any phase; a pending fixed request blocks them so
        // the serv -> req -> switch instant order is preserved).
        bool fixedPending = false;
        if (fixedIn) {
            Count idx = rd16(s + 8);
            fixedPending = idx + 1 < static_cast<Count>(fixedTimes.size()) &&
                           fixedTimes[static_cast<std::size_t>(idx) + 1] == t;
        }
        bool forcedAbove = false, forcedBelow = false;
        if (isMta && !fixedPending) {
            bool dwellOk = dwell >= pm->dwellMin;
            forcedAbove = pm->aboveTarget >= 0 && dwellOk && q >= pm->aboveForce;
            forcedBelow = pm->belowTarget >= 0 && dwellOk && q <= pm->belowForce;
            bool mayAbove = pm->aboveTarget >= 0 && dwellOk && q >= pm->aboveMay;
            bool mayBelow = pm->belowTarget >= 0 && dwellOk && q <= pm->belowMay;
            bool mayTime = pm->timeoutTarget >= 0 && !is_unbounded(pm->dwellMax) &&
                           dwell == pm->dwellMax;

            int targets[3];
            int nt = 0;
            if (net.granularity == 1) {
                if (mayAbove) targets[nt++] = pm->aboveTarget;
                else if (mayBelow) targets[nt++] = pm->belowTarget;
                else if (mayTime) targets[nt++] = pm->timeoutTarget;
            } else if (forcedAbove) {
                targets[nt++] = pm->aboveTarget;
            } else if (forcedBelow) {
                targets[nt++] = pm->belowTarget;
            } else {
                if (mayAbove) targets[nt++] = pm->aboveTarget;
                if (mayBelow) targets[nt++] = pm->belowTarget;
                if (mayTime) targets[nt++] = pm->timeoutTarget;
            }
            for (int i = 0; i < nt; ++i) {
                std::memcpy(nxt.data(), s, stateBytes);
                std::uint8_t* n = nxt.data();
                n[0] = static_cast<std::uint8_t>(targets[i]);
                wr16(n + 4, 0);
                n[7] = Ns > 0 ? 1 : 0;
                std::memset(n + offServ, 0, 2 * static_cast<std::size_t>(Ns));
                set_phase(n, kPhaseSwitch);
                add(false, false);
            }
        }

        // Elapse.
        bool blocked = false;
        if (boxed && t >= lim.horizon) blocked = true;
        if (!blocked && fixedPending) blocked = true;
        if (!blocked && !fixedIn &&
            !(trackEmitted &&
              rd16(s + 8) >= static_cast<Count>(lim.maxInputEvents)) &&
            input_forced(s))
            blocked = true;
        if (!blocked && isMta) {
            if (s[7] > 0 && serv_forced(s)) blocked = true;
            if (!is_unbounded(pm->dwellMax) && dwell >= pm->dwellMax)
                blocked = true;
            if (forcedAbove || forcedBelow) blocked = true;
        }
        if (!blocked) {
            std::memcpy(nxt.data(), s, stateBytes);
            std::uint8_t* n = nxt.data();
            if (!fixedIn && Nin > 0)
                wr16(n + offIn, static_cast<std::uint16_t>(
                                    std::min<Time>(rd16(s + offIn) + 1, genCap)));
            if (isMta && Ns > 0)
                wr16(n + offServ,
                     static_cast<std::uint16_t>(
                         std::min<Time>(rd16(s + offServ) + 1, genCap)));
            if (isMta)
                wr16(n + 4, static_cast<std::uint16_t>(
                                std::min<Time>(dwell + 1, dwellCap[s[0]])));
            if (boxed) wr32(n + 10, static_cast<std::uint32_t>(t + 1));
            set_phase(n, kPhaseServ);
            add(false, true);
        }
    }

    void build() {
        auto t0 = std::chrono::steady_clock::now();
        seed();
        std::vector<std::uint8_t> cur(stateBytes), nxt(stateBytes);
        for (std::uint64_t i = 0; i < count; ++i) {
            edgeOff.push_back(edgeTo.size());
            expand(static_cast<std::uint32_t>(i), cur, nxt);
        }
        edgeOff.push_back(edgeTo.size());
        st.states = count;
        st.buildMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    }

    // ----- min-window DP -------------------------------------------------

    void advance_min_layer() {
        std::vector<std::int64_t> nd(count, kPosInf);
        using QE = std::pair<std::int64_t, std::uint32_t>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        if (minLayer < 0) {
            // Layer 0 seeds every window anchor: the origin states and each
            // state entered by a produce event.
            for (std::uint64_t i = 0; i < count; ++i)
                if (anchor[i]) {
                    nd[i] = 0;
                    pq.push({0, static_cast<std::uint32_t>(i)});
                }
        } else {
            for (auto [u, v] : produceEdges)
                if (minD[u] != kPosInf && minD[u] < nd[v]) {
                    nd[v] = minD[u];
                    pq.push({nd[v], v});
                }
        }
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != nd[u]) continue;
            for (std::uint64_t e = edgeOff[u]; e < edgeOff[u + 1]; ++e) {
                if (edgeFl[e] & 1) continue;
                std::int64_t w = (edgeFl[e] & 2) ? 1 : 0;
                std::uint32_t v = edgeTo[e];
                if (d + w < nd[v]) {
                    nd[v] = d + w;
                    pq.push({nd[v], v});
                }
            }
        }
        minD.swap(nd);
        ++minLayer;
    }

    void ensure_min(Count layer) {
        if (minLayer > layer) {
            minLayer = -1;
            minD.clear();
        }
        while (minLayer < layer) advance_min_layer();
    }

    // ----- max-window DP -------------------------------------------------

    void build_scc() {
        // Iterative Tarjan over the produce-free subgraph.
        scc.assign(count, -1);
        std::vector<std::int32_t> low(count, 0), idx(count, -1);
        std::vector<std::uint8_t> onstk(count, 0);
        std::vector<std::uint32_t> stk;
        struct Frame {
            std::uint32_t v;
            std::uint64_t e;
        };
        std::vector<Frame> call;
        std::int32_t next = 0;
        sccCount = 0;
        for (std::uint64_t r = 0; r < count; ++r) {
            if (idx[r] != -1) continue;
            call.push_back({static_cast<std::uint32_t>(r), edgeOff[r]});
            idx[r] = low[r] = next++;
            stk.push_back(static_cast<std::uint32_t>(r));
            onstk[r] = 1;
            while (!call.empty()) {
                Frame& f = call.back();
                if (f.e < edgeOff[f.v + 1]) {
                    std::uint64_t e = f.e++;
                    if (edgeFl[e] & 1) continue;
                    std::uint32_t w = edgeTo[e];
                    if (idx[w] == -1) {
                        call.push_back({w, edgeOff[w]});
                        idx[w] = low[w] = next++;
                        stk.push_back(w);
                        onstk[w] = 1;
                    } else if (onstk[w]) {
                        low[f.v] = std::min(low[f.v], idx[w]);
                    }
                } else {
                    std::uint32_t v = f.v;
                    call.pop_back();
                    if (!call.empty())
                        low[call.back().v] = std::min(low[call.back().v], low[v]);
                    if (low[v] == idx[v]) {
                        while (true) {
                            std::uint32_t w = stk.back();
                            stk.pop_back();
                            onstk[w] = 0;
                            scc[w] = sccCount;
                            if (w == v) break;
                        }
                        ++sccCount;
                    }
                }
            }
        }

        // Pump flags and cross-component adjacency (component ids are in
        // reverse topological order: edges go from higher ids to lower).
        sccPump.assign(sccCount, 0);
        std::vector<std::uint64_t> cnt(sccCount + 1, 0);
        for (std::uint64_t u = 0; u < count; ++u)
            for (std::uint64_t e = edgeOff[u]; e < edgeOff[u + 1]; ++e) {
                if (edgeFl[e] & 1) continue;
                std::int32_t cu = scc[u], cv = scc[edgeTo[e]];
                if (cu == cv) {
                    if (edgeFl[e] & 2) sccPump[cu] = 1;
                } else {
                    ++cnt[cu + 1];
                }
            }
        for (std::int32_t c = 0; c < sccCount; ++c) cnt[c + 1] += cnt[c];
        sccAdjOff.assign(cnt.begin(), cnt.end());
        sccAdj.resize(cnt[sccCount]);
        std::vector<std::uint64_t> fill(sccAdjOff.begin(), sccAdjOff.end() - 1);
        for (std::uint64_t u = 0; u < count; ++u)
            for (std::uint64_t e = edgeOff[u]; e < edgeOff[u + 1]; ++e) {
                if (edgeFl[e] & 1) continue;
                std::int32_t cu = scc[u], cv = scc[edgeTo[e]];
                if (cu != cv)
                    sccAdj[fill[cu]++] = {cv, static_cast<std::int8_t>(
                                                  (edgeFl[e] & 2) ? 1 : 0)};
            }
        sccReady = true;
    }

    void advance_max_layer() {
        std::vector<std::int64_t> nv(sccCount, kNegInf);
        if (maxLayer < 0) {
            for (std::uint64_t i = 0; i < count; ++i)
                if (anchor[i]) nv[scc[i]] = std::max<std::int64_t>(nv[scc[i]], 0);
        } else {
            for (auto [u, v] : produceEdges) {
                std::int64_t val = maxVal[scc[u]];
                if (val == kNegInf) continue;
                nv[scc[v]] = std::max(nv[scc[v]], val);
            }
        }
        for (std::int32_t c = sccCount - 1; c >= 0; --c) {
            if (nv[c] == kNegInf) continue;
            if (sccPump[c]) nv[c] = kPosInf;
            std::int64_t base = nv[c];
            for (std::uint64_t e = sccAdjOff[c]; e < sccAdjOff[c + 1]; ++e) {
                auto [to, dur] = sccAdj[e];
                std::int64_t cand = base == kPosInf ? kPosInf : base + dur;
                nv[to] = std::max(nv[to], cand);
            }
        }
        maxVal.swap(nv);
        ++maxLayer;
    }

    void ensure_max(Count layer) {
        if (!sccReady) build_scc();
        if (maxLayer > layer) {
            maxLayer = -1;
            maxVal.clear();
        }
        while (maxLayer < layer) advance_max_layer();
    }
};

Exploration::Exploration(const Network& net, const EngineLimits& lim)
    : impl_(std::make_unique<Impl>()) {
    impl_->prepare(net, lim, nullptr);
    impl_->build();
}

Exploration::Exploration(const Network& net, const EventStream& fixedInput,
                         const EngineLimits& lim)
    : impl_(std::make_unique<Impl>()) {
    impl_->prepare(net, lim, &fixedInput);
    impl_->build();
}

Exploration::~Exploration() = default;
Exploration::Exploration(Exploration&&) noexcept = default;
Exploration& Exploration::operator=(Exploration&&) noexcept = default;

CurvePoint Exploration::lower(Count k) const {
    if (k < 1) throw std::invalid_argument("lower: k must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    Impl& im = *impl_;
    im.ensure_min(k - 1);
    std::int64_t best = kPosInf;
    for (auto [u, v] : im.produceEdges) best = std::min(best, im.minD[u]);
    im.st.queryMs += std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    if (best == kPosInf) return {PointKind::Unreachable, 0};
    return {PointKind::Value, best};
}

CurvePoint Exploration::upper(Count k) const {
    if (k < 1) throw std::invalid_argument("upper: k must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    Impl& im = *impl_;
    im.ensure_max(k - 1);
    std::int64_t best = kNegInf;
    for (auto [u, v] : im.produceEdges)
        best = std::max(best, im.maxVal[im.scc[u]]);
    im.st.queryMs += std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    if (best == kNegInf) return {PointKind::Unreachable, 0};
    if (best == kPosInf) return {PointKind::Unbounded, 0};
    return {PointKind::Value, best};
}

const EngineStats& Exploration::stats() const { return impl_->st; }

std::vector<EventStream> Exploration::produce_streams() const {
    const Impl& im = *impl_;
    if (!im.boxed)
        throw Error("produce_streams requires a boxed exploration");

    std::map<std::vector<Time>, int> ids;
    std::vector<const std::vector<Time>*> byId;
    auto intern_stream = [&](const std::vector<Time>& ts) {
        auto [it, fresh] = ids.emplace(ts, static_cast<int>(ids.size()));
        if (fresh) byId.push_back(&it->first);
        return it->second;
    };

    int root = intern_stream({0});
    std::set<std::pair<std::uint32_t, int>> seen;
    std::vector<std::pair<std::uint32_t, int>> stack;
    for (std::uint32_t s0 : im.initials) {
        if (seen.emplace(s0, root).second) stack.push_back({s0, root});
    }
    while (!stack.empty()) {
        auto [u, sid] = stack.back();
        stack.pop_back();
        if (seen.size() > im.lim.maxStates)
            throw BudgetExceeded("produce_streams: exploration budget exceeded");
        Time t = rd32(im.at(u) + 10);
        for (std::uint64_t e = im.edgeOff[u]; e < im.edgeOff[u + 1]; ++e) {
            std::uint32_t v = im.edgeTo[e];
            int nsid = sid;
            if (im.edgeFl[e] & 1) {
                std::vector<Time> ts = *byId[sid];
                ts.push_back(t);
                nsid = intern_stream(ts);
            }
            if (seen.emplace(v, nsid).second) stack.push_back({v, nsid});
        }
    }

    std::vector<EventStream> out;
    out.reserve(ids.size());
    for (const auto& [ts, id] : ids) out.push_back(EventStream{ts});
    return out;
}

CurvePoint analyze_lower(const Network& net, Count k, const EngineLimits& lim) {
    return Exploration(net, lim).lower(k);
}

CurvePoint analyze_upper(const Network& net, Count k, const EngineLimits& lim) {
    return Exploration(net, lim).upper(k);
}

ComponentAnalysis analyze_component(const MtaSpec& spec,
                                    const XiCurvePair& inArr, Count g, Count n,
                                    const EngineLimits& lim) {
    if (n < 1) throw std::invalid_argument("analyze_component: n must be >= 1");
    Network net = translate_coarse(spec, inArr, g);
    Exploration ex(net, lim);

    ComponentAnalysis r;
    r.curve.granularity = g;
    bool truncated = false;
    for (Count k = 1; k <= n; ++k) {
        CurvePoint lo = ex.lower(k);
        CurvePoint up = ex.upper(k);
        if (lo.kind == PointKind::Unreachable ||
            up.kind == PointKind::Unreachable) {
            r.kinds.push_back(PointKind::Unreachable);
            truncated = true;
            continue;
        }
        r.kinds.push_back(up.kind);
        if (!truncated) {
            r.curve.lower.push_back(lo.value);
            r.curve.upper.push_back(up.kind == PointKind::Unbounded ? kUnbounded
                                                                    : up.value);
        }
    }
    r.stats = ex.stats();
    return r;
}

Time default_horizon(const MtaSpec& spec, const XiCurvePair& inArr, Count n) {
    if (n < 1) throw std::invalid_argument("default_horizon: n must be >= 1");
    auto curve_time = [&](const XiCurvePair& x) -> Time {
        Count N = x.points();
        Count take = std::min(n, N);
        Time base = x.upper_at(take);
        if (is_unbounded(base)) return kUnbounded;
        if (n <= N) return base;
        // Chain full windows to cover n events.
        Time full = x.upper_at(N);
        if (is_unbounded(full)) return kUnbounded;
        Count chunks = (n + N - 1) / N;
        return full * chunks;
    };
    Time h = curve_time(inArr);
    for (const auto& m : spec.modes) {
        Time ct = curve_time(m.service);
        if (is_unbounded(h) || is_unbounded(ct)) h = kUnbounded;
        else h = std::max(h, ct);
    }
    if (is_unbounded(h)) return kUnbounded;
    Time dwell = 0;
    for (const auto& m : spec.modes)
        if (!is_unbounded(m.dwellMax)) dwell = std::max(dwell, m.dwellMax);
    return h + dwell;
}

} // namespace rtca
