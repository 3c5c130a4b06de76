#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "rtca/errors.hpp"
#include "rtca/oracle.hpp"

using namespace rtca;

namespace {

XiCurvePair mk(std::vector<Time> lo, std::vector<Time> up) {
    XiCurvePair x;
    x.lower = std::move(lo);
    x.upper = std::move(up);
    return x;
}

EventStream ev(std::vector<Time> t) {
    EventStream s;
    s.times = std::move(t);
    return s;
}

// Every nondecreasing timestamp sequence in the box, satisfying or not:
// the reference lattice for the definitional enumeration check.
void all_streams(Count maxEvents, Time maxTime, EventStream& cur,
                 std::vector<EventStream>& out) {
    out.push_back(cur);
    if (cur.events() >= maxEvents - 1) return;
    for (Time t = cur.times.back(); t <= maxTime; ++t) {
        cur.times.push_back(t);
        all_streams(maxEvents, maxTime, cur, out);
        cur.times.pop_back();
    }
}

} // namespace

TEST_CASE("enumerate_streams lists exactly the satisfying box") {
    SECTION("forced cadence, three timestamps") {
        auto got = enumerate_streams(mk({2}, {2}), 3, 10);
        // Prefix-closed: the maximal stream plus every prefix.
        REQUIRE(got.size() == 3);
        CHECK(got[0] == ev({0}));
        CHECK(got[1] == ev({0, 2}));
        CHECK(got[2] == ev({0, 2, 4}));
    }
    SECTION("slack admits two two-timestamp streams") {
        auto got = enumerate_streams(mk({1}, {2}), 2, 4);
        REQUIRE(got.size() == 3);
        CHECK(got[1] == ev({0, 1}));
        CHECK(got[2] == ev({0, 2}));
    }
    SECTION("agrees with filtering the full lattice") {
        std::mt19937 rng(333);
        std::uniform_int_distribution<int> lo1(1, 2), up1(2, 4);
        for (int trial = 0; trial < 20; ++trial) {
            Time l1 = lo1(rng), u1 = up1(rng);
            XiCurvePair x = mk({l1, l1 + 1}, {u1, u1 + 2});
            auto got = enumerate_streams(x, 4, 8);
            EventStream cur;
            std::vector<EventStream> lattice, want;
            all_streams(4, 8, cur, lattice);
            for (const auto& s : lattice)
                if (stream_satisfies(s, x)) want.push_back(s);
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
    SECTION("every prefix of a member is a member") {
        auto got = enumerate_streams(mk({1, 3}, {2, 4}), 4, 9);
        std::vector<EventStream> set(got.begin(), got.end());
        for (const auto& s : got) {
            EventStream p = s;
            while (p.events() > 0) {
                p.times.pop_back();
                CHECK(std::binary_search(set.begin(), set.end(), p));
            }
        }
    }
    SECTION("budget is a hard error, not a truncation") {
        CHECK_THROWS_AS(enumerate_streams(mk({1}, {3}), 6, 20, /*budget=*/5),
                        BudgetExceeded);
    }
}

TEST_CASE("extensible_streams sees through trailing-window blindness") {
    SECTION("forced cadence is extensible at every length") {
        auto got = extensible_streams(mk({2}, {2}), 3);
        REQUIRE(got.size() == 1);
        CHECK(got[0] == ev({0, 2, 4, 6}));
    }
    SECTION("a pair admitting only dead-end streams has no extensible ones") {
        // 0,1,1,2,3 satisfies this pair, but nothing satisfies it forever.
        XiCurvePair x = mk({0, 1, 1, 3}, {1, 2, 2, 4});
        CHECK(enumerate_streams(x, 5, 4).size() > 1);
        CHECK(extensible_streams(x, 4).empty());
    }
    SECTION("unbounded upper gaps are refused") {
        CHECK_THROWS_AS(extensible_streams(mk({1}, {kUnbounded}), 2),
                        BudgetExceeded);
    }
}

TEST_CASE("is_refinement compares overlapping coarse indices") {
    EventStream fine = ev({0, 1, 3, 4, 7, 9, 12});
    CHECK(is_refinement(fine, ev({0, 4, 12}), 3));
    CHECK(is_refinement(fine, ev({0, 4}), 3));      // shorter coarse is fine
    CHECK(is_refinement(fine, ev({0, 4, 12, 15}), 3)); // extra coarse tail too
    CHECK_FALSE(is_refinement(fine, ev({0, 5}), 3));
    CHECK(is_refinement(ev({0}), ev({0}), 2));
}

namespace {

// Two modes exercising both backlog switches: run serves briskly and drains
// to an underrun, sleep idles until the buffer overruns.
MtaSpec bounce_spec() {
    MtaSpec spec;
    Mode run;
    run.id = "run";
    run.service = mk({1}, {2});
    run.backlogLow = 1;
    run.hasLow = true;
    run.transitions.push_back({SwitchKind::BufferBelow, "", "sleep"});
    Mode sleep;
    sleep.id = "sleep";
    sleep.service = mk({3}, {6});
    sleep.backlogHigh = 1;
    sleep.hasHigh = true;
    sleep.transitions.push_back({SwitchKind::BufferAbove, "", "run"});
    spec.modes = {run, sleep};
    spec.initialMode = "run";
    spec.initialBacklog = 0;
    return spec;
}

} // namespace

TEST_CASE("simulate_mta replays a scripted run deterministically") {
    MtaSpec spec = bounce_spec();
    EventStream input = ev({0, 1, 2}); // requests at 1 and 2

    // Visits: run (exits immediately on the empty buffer), sleep (fills),
    // run again (drains), sleep. Only the second run visit ever serves.
    std::vector<EventStream> visits = {ev({0}), ev({0}), ev({0, 1, 2}), ev({0})};
    SimResult r = simulate_mta(spec, input, visits, 6);

    CHECK(r.output == ev({0, 3, 4}));
    REQUIRE(r.switches.size() == 3);
    CHECK(r.switches[0].at == 0);
    CHECK(r.switches[0].from == "run");
    CHECK(r.switches[0].to == "sleep");
    CHECK(r.switches[0].kind == SwitchKind::BufferBelow);
    CHECK(r.switches[1].at == 2);
    CHECK(r.switches[1].kind == SwitchKind::BufferAbove);
    CHECK(r.switches[2].at == 4);
    CHECK(r.switches[2].to == "sleep");
    CHECK(r.finalMode == "sleep");
    CHECK(r.finalBacklog == 0);

    SECTION("per-mode convenience overload agrees") {
        std::map<std::string, EventStream> perMode{{"run", ev({0, 1, 2})},
                                                   {"sleep", ev({0})}};
        SimResult m = simulate_mta(spec, input, perMode, 6);
        CHECK(m.output == r.output);
        CHECK(m.switches.size() == r.switches.size());
        CHECK(m.finalMode == r.finalMode);
    }

    SECTION("a too-dense service stream violates the curve") {
        std::vector<EventStream> bad = {ev({0}), ev({0}), ev({0, 1, 1}), ev({0})};
        CHECK_THROWS_AS(simulate_mta(spec, input, bad, 6), Error);
    }

    SECTION("a stalling service stream violates the upper bound") {
        std::vector<EventStream> bad = {ev({0}), ev({0}), ev({0, 1}), ev({0})};
        // After the service event at relative 1, the next one is due within
        // 2 time units; the stream just stops while time keeps flowing.
        CHECK_THROWS_AS(simulate_mta(spec, input, bad, 6), Error);
    }
}

TEST_CASE("oracle_output_curves on a fully forced instance") {
    // Service every time unit, requests exactly every 2: produces land at
    // 1, 3, 5 (the service event at each even instant precedes the request
    // and is wasted on the then-empty buffer).
    MtaSpec spec;
    Mode only;
    only.id = "only";
    only.service = mk({1}, {1});
    spec.modes = {only};
    spec.initialMode = "only";
    spec.initialBacklog = 1;
    XiCurvePair arr = mk({2}, {2});

    OracleCurves oc = oracle_output_curves(spec, arr, 3, 5, 2);
    CHECK(oc.curve.lower == std::vector<Time>{1, 3});
    CHECK(oc.curve.upper == std::vector<Time>{2, 4});

    SECTION("budget refusal") {
        CHECK_THROWS_AS(oracle_output_curves(spec, arr, 3, 5, 2, /*budget=*/5),
                        BudgetExceeded);
    }
}
