#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "rtca/curve_algebra.hpp"
#include "rtca/engine.hpp"
#include "rtca/errors.hpp"
#include "rtca/network.hpp"
#include "rtca/oracle.hpp"

using namespace rtca;

namespace {

XiCurvePair mk(std::vector<Time> lo, std::vector<Time> up) {
    XiCurvePair x;
    x.lower = std::move(lo);
    x.upper = std::move(up);
    return x;
}

MtaSpec single_mode(const XiCurvePair& service, Count q0) {
    MtaSpec spec;
    Mode m;
    m.id = "only";
    m.service = service;
    spec.modes = {m};
    spec.initialMode = "only";
    spec.initialBacklog = q0;
    return spec;
}

// Window extrema of a random stream with unit-or-more gaps; satisfiable and
// nonzero lower(1) by construction, which keeps tiny boxes finite.
XiCurvePair random_curve(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> gap(1, 3), pad(0, 1);
    std::vector<Time> t{0};
    for (int i = 0; i < n + 5; ++i) t.push_back(t.back() + gap(rng));
    std::vector<Time> lo, up;
    for (int k = 1; k <= n; ++k) {
        Time mn = kUnbounded, mx = 0;
        for (std::size_t i = 0; i + k < t.size(); ++i) {
            mn = std::min(mn, t[i + k] - t[i]);
            mx = std::max(mx, t[i + k] - t[i]);
        }
        lo.push_back(mn);
        up.push_back(mx + pad(rng));
    }
    return mk(std::move(lo), std::move(up));
}

MtaSpec random_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1), q0(0, 2), thr(1, 3);
    MtaSpec spec;
    if (coin(rng) == 0) {
        spec.modes = {Mode{}};
        spec.modes[0].id = "only";
        spec.modes[0].service = random_curve(rng, 4);
    } else {
        Mode a, b;
        a.id = "a";
        a.service = random_curve(rng, 4);
        b.id = "b";
        b.service = random_curve(rng, 4);
        if (coin(rng)) {
            a.backlogHigh = thr(rng);
            a.hasHigh = true;
            a.transitions.push_back({SwitchKind::BufferAbove, "", "b"});
        } else {
            a.dwellMax = 2 + thr(rng);
            a.transitions.push_back({SwitchKind::Timeout, "", "b"});
        }
        if (coin(rng)) {
            b.backlogLow = thr(rng);
            b.hasLow = true;
            b.transitions.push_back({SwitchKind::BufferBelow, "", "a"});
        }
        spec.modes = {a, b};
    }
    spec.initialMode = spec.modes[0].id;
    spec.initialBacklog = q0(rng);
    return spec;
}

} // namespace

TEST_CASE("wire exploration speaks the generator language exactly") {
    for (auto [x, horizon] :
         {std::pair{mk({2}, {2}), Time(12)}, {mk({1, 3}, {2, 4}), Time(9)}}) {
        EngineLimits lim;
        lim.horizon = horizon;
        Exploration ex(make_wire(x), lim);
        auto got = ex.produce_streams();
        auto want = enumerate_streams(x, 99, horizon);
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("fully forced instance: engine equals the hand computation") {
    MtaSpec spec = single_mode(mk({1}, {1}), 1);
    XiCurvePair arr = mk({2}, {2});
    EngineLimits lim;
    lim.horizon = 5;
    lim.maxInputEvents = 2;
    ComponentAnalysis a = analyze_component(spec, arr, 1, 2, lim);
    CHECK(a.curve.lower == std::vector<Time>{1, 3});
    CHECK(a.curve.upper == std::vector<Time>{2, 4});
    CHECK(a.kinds == std::vector<PointKind>{PointKind::Value, PointKind::Value});
}

TEST_CASE("boxed engine equals the enumeration oracle on random instances") {
    std::mt19937 rng(8101);
    std::uniform_int_distribution<int> timeD(8, 11);
    int done = 0;
    for (int trial = 0; trial < 10; ++trial) {
        MtaSpec spec = random_spec(rng);
        XiCurvePair arr = random_curve(rng, 4);
        Count maxEvents = 3;
        Time maxTime = timeD(rng);

        OracleCurves oc;
        try {
            oc = oracle_output_curves(spec, arr, maxEvents, maxTime, 4);
        } catch (const BudgetExceeded&) {
            continue; // rare; the acceptance run covers volume
        }
        EngineLimits lim;
        lim.horizon = maxTime;
        lim.maxInputEvents = maxEvents - 1;
        ComponentAnalysis a = analyze_component(spec, arr, 1, 4, lim);
        INFO("trial " << trial);
        CHECK(a.curve == oc.curve);
        ++done;
    }
    CHECK(done >= 8);
}

TEST_CASE("widening the box never tightens a window") {
    MtaSpec spec = single_mode(mk({1, 2, 4}, {2, 4, 6}), 1);
    XiCurvePair arr = mk({1, 3}, {3, 5});
    XiCurvePair prev;
    bool first = true;
    for (Time horizon : {6, 8, 10}) {
        EngineLimits lim;
        lim.horizon = horizon;
        ComponentAnalysis a = analyze_component(spec, arr, 1, 3, lim);
        if (!first) {
            CHECK(a.curve.points() >= prev.points());
            for (Count k = 1; k <= prev.points(); ++k) {
                CHECK(a.curve.lower_at(k) <= prev.lower_at(k));
                CHECK(a.curve.upper_at(k) >= prev.upper_at(k));
            }
        }
        prev = a.curve;
        first = false;
    }
}

TEST_CASE("a stalling input pumps the upper bound to unbounded") {
    // Input may stop forever after any event while service keeps ticking:
    // every upper window is unbounded, yet sustained input yields unit
    // produce gaps, so the lower windows stay tight.
    MtaSpec spec = single_mode(mk({1}, {1}), 0);
    XiCurvePair arr = mk({1}, {kUnbounded});
    Exploration ex(translate_fine(spec, arr));
    CHECK(ex.lower(1) == CurvePoint{PointKind::Value, 1});
    CHECK(ex.lower(2) == CurvePoint{PointKind::Value, 2});
    CHECK(ex.upper(1).kind == PointKind::Unbounded);
    CHECK(ex.upper(2).kind == PointKind::Unbounded);
}

TEST_CASE("windows beyond the box report unreachable") {
    // One initial item plus at most one arrival: two produces at most, so a
    // three-event window can never materialise inside the box.
    MtaSpec spec = single_mode(mk({1}, {1}), 1);
    XiCurvePair arr = mk({2}, {2});
    EngineLimits lim;
    lim.horizon = 4;
    lim.maxInputEvents = 1;
    ComponentAnalysis a = analyze_component(spec, arr, 1, 3, lim);
    CHECK(a.curve.lower == std::vector<Time>{1, 3});
    CHECK(a.curve.upper == std::vector<Time>{2, 3});
    CHECK(a.kinds == std::vector<PointKind>{PointKind::Value, PointKind::Value,
                                            PointKind::Unreachable});
}

TEST_CASE("budgets are hard errors") {
    SECTION("state budget") {
        MtaSpec spec = single_mode(mk({1, 2}, {3, 5}), 0);
        XiCurvePair arr = mk({1, 2}, {3, 5});
        EngineLimits lim;
        lim.maxStates = 10;
        CHECK_THROWS_AS(analyze_component(spec, arr, 1, 2, lim), BudgetExceeded);
    }
    SECTION("unbounded backlog growth") {
        // Input arrives every time unit, service drains every 30..60: the
        // backlog climbs past any bound and the exploration must refuse
        // rather than merge backlog states.
        MtaSpec spec = single_mode(mk({30}, {60}), 0);
        XiCurvePair arr = mk({1}, {1});
        try {
            analyze_component(spec, arr, 1, 2, {});
            FAIL("expected BudgetExceeded");
        } catch (const BudgetExceeded& e) {
            CHECK(std::string(e.what()).find("backlog") != std::string::npos);
        }
    }
}

TEST_CASE("translation fixes guard constants and service rows") {
    MtaSpec spec;
    Mode a, b;
    a.id = "a";
    a.service = mk({1, 2, 4, 6}, {2, 4, 6, 8});
    a.backlogLow = 2;
    a.hasLow = true;
    a.backlogHigh = 5;
    a.hasHigh = true;
    a.transitions.push_back({SwitchKind::BufferBelow, "", "b"});
    a.transitions.push_back({SwitchKind::BufferAbove, "", "b"});
    b.id = "b";
    b.service = mk({2, 4}, {3, 5});
    spec.modes = {a, b};
    spec.initialMode = "a";
    spec.initialBacklog = 3;
    XiCurvePair arr = mk({1, 2}, {3, 4});

    SECTION("fine guards are the exact threshold tests") {
        Network n = translate_fine(spec, arr);
        CHECK(n.wasteMay == 0);
        CHECK(n.initialBacklogs == std::vector<Count>{3});
        const PeMode& pa = n.modes[0];
        CHECK(pa.aboveMay == 6);   // fires exactly on backlog > 5
        CHECK(pa.aboveForce == 6); // and may not linger there
        CHECK(pa.belowMay == 1);   // fires exactly on backlog < 2
        CHECK(pa.belowForce == 1);
        CHECK(pa.serviceRows.lower == a.service.lower);
        CHECK(pa.serviceRows.upper == a.service.upper);
        CHECK(n.modes[1].belowForce == -1); // no below exit: never blocked
    }
    SECTION("g=2 guards widen by the alignment slack") {
        Network n = translate_coarse(spec, arr, 2);
        CHECK(n.wasteMay == 1);
        // Backlog 3 sits strictly between coarse levels 1 and 2.
        CHECK(n.initialBacklogs == std::vector<Count>{1, 2});
        const PeMode& pa = n.modes[0];
        CHECK(pa.aboveMay == 3);  // floor((5+1)/2)
        CHECK(pa.aboveForce == 4);
        CHECK(pa.belowMay == 2);  // ceil((2-1)/2) plus slack
        CHECK(pa.belowForce == 0);
        // Row k spans k..2k underlying service steps.
        CHECK(pa.serviceRows.lower == std::vector<Time>{1, 2});
        CHECK(pa.serviceRows.upper == std::vector<Time>{4, 8});
    }
    SECTION("granularity above any curve's point count is rejected") {
        CHECK_THROWS_AS(translate_coarse(spec, arr, 3), std::invalid_argument);
    }
}

TEST_CASE("coarse curves bound the sampled fine curves (tiny box)") {
    std::mt19937 rng(3434);
    std::uniform_int_distribution<int> timeD(9, 12);
    int checked = 0;
    for (int trial = 0; trial < 8; ++trial) {
        MtaSpec spec = random_spec(rng);
        XiCurvePair arr = random_curve(rng, 6);
        Time maxTime = timeD(rng);

        EngineLimits fineLim;
        fineLim.horizon = maxTime;
        fineLim.maxInputEvents = 3;
        ComponentAnalysis fine = analyze_component(spec, arr, 1, 6, fineLim);

        EngineLimits coarseLim;
        coarseLim.horizon = maxTime;
        ComponentAnalysis coarse = analyze_component(spec, arr, 2, 3, coarseLim);

        for (Count k = 1; k <= coarse.curve.points(); ++k) {
            if (2 * k > fine.curve.points()) break;
            INFO("trial " << trial << " k=" << k);
            CHECK(coarse.curve.lower_at(k) <= fine.curve.lower_at(2 * k));
            if (!is_unbounded(fine.curve.upper_at(2 * k)))
                CHECK(coarse.curve.upper_at(k) >= fine.curve.upper_at(2 * k));
            ++checked;
        }
    }
    CHECK(checked >= 4);
}

TEST_CASE("default_horizon is finite exactly when the ingredients are") {
    MtaSpec spec = single_mode(mk({1, 2}, {3, 5}), 0);
    CHECK_FALSE(is_unbounded(default_horizon(spec, mk({1}, {4}), 3)));
    CHECK(is_unbounded(default_horizon(spec, mk({1}, {kUnbounded}), 3)));

    MtaSpec lazy = single_mode(mk({1}, {kUnbounded}), 0);
    CHECK(is_unbounded(default_horizon(lazy, mk({1}, {4}), 3)));
}
