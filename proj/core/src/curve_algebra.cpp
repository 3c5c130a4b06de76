#include "rtca/curve_algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtca/errors.hpp"

namespace rtca {

std::vector<std::string> validate(const XiCurvePair& x) {
    std::vector<std::string> out;
    auto report = [&out](const std::string& msg) { out.push_back(msg); };

    if (x.granularity < 1) report("granularity must be at least 1");
    if (x.lower.size() != x.upper.size())
        report("lower and upper have different lengths");
    if (x.lower.empty()) report("curve has no points");

    const Count n = std::min(x.points(), static_cast<Count>(x.upper.size()));
    for (Count k = 1; k <= n; ++k) {
        if (x.lower_at(k) < 0)
            report("lower[" + std::to_string(k) + "] negative");
        if (is_unbounded(x.lower_at(k)))
            report("lower[" + std::to_string(k) + "] unbounded");
        if (x.lower_at(k) > x.upper_at(k))
            report("lower[" + std::to_string(k) + "] > upper[" +
                   std::to_string(k) + "]");
        if (k > 1) {
            if (x.lower_at(k) < x.lower_at(k - 1))
                report("lower not nondecreasing at k=" + std::to_string(k));
            if (x.upper_at(k) < x.upper_at(k - 1))
                report("upper not nondecreasing at k=" + std::to_string(k));
        }
    }
    return out;
}

namespace {

void require_valid(const XiCurvePair& x, const char* who) {
    auto diags = validate(x);
    if (!diags.empty())
        throw std::invalid_argument(std::string(who) + ": invalid curve pair: " +
                                    diags.front());
}

void require_valid_alpha(const AlphaCurvePair& a, const char* who) {
    std::string pre(who);
    if (a.lower.size() != a.upper.size() || a.lower.empty())
        throw std::invalid_argument(pre + ": malformed count curves");
    for (std::size_t d = 0; d < a.lower.size(); ++d) {
        if (a.lower[d] < 0 || a.upper[d] < 0 || a.lower[d] > a.upper[d])
            throw std::invalid_argument(pre + ": count bounds cross at d=" +
                                        std::to_string(d));
        if (d > 0 && (a.lower[d] < a.lower[d - 1] || a.upper[d] < a.upper[d - 1]))
            throw std::invalid_argument(pre + ": count curve decreasing at d=" +
                                        std::to_string(d));
    }
    if (a.lower[0] != 0)
        throw std::invalid_argument(pre + ": lower[0] must be 0");
}

} // namespace

XiCurvePair xi_from_alpha(const AlphaCurvePair& a, Count n) {
    require_valid_alpha(a, "xi_from_alpha");
    if (n < 1) throw std::invalid_argument("xi_from_alpha: n must be >= 1");

    const Count dmax = a.dmax();
    XiCurvePair x;
    x.granularity = 1;
    x.lower.resize(static_cast<std::size_t>(n));
    x.upper.resize(static_cast<std::size_t>(n));

    // Both transforms walk the count curves once; they are nondecreasing, so
    // the smallest d reaching each threshold k is found by a single sweep.
    Count d_lo = 0, d_up = 0;
    for (Count k = 1; k <= n; ++k) {
        while (d_up <= dmax && a.lower[static_cast<std::size_t>(d_up)] < k) ++d_up;
        x.upper[static_cast<std::size_t>(k - 1)] = d_up <= dmax ? d_up : kUnbounded;

        while (d_lo <= dmax && a.upper[static_cast<std::size_t>(d_lo)] < k) ++d_lo;
        x.lower[static_cast<std::size_t>(k - 1)] = d_lo <= dmax ? d_lo : dmax;
    }
    return x;
}

AlphaCurvePair alpha_from_xi(const XiCurvePair& x, Count dmax) {
    require_valid(x, "alpha_from_xi");
    if (dmax < 0) throw std::invalid_argument("alpha_from_xi: dmax must be >= 0");

    const Count n = x.points();
    AlphaCurvePair a;
    a.lower.resize(static_cast<std::size_t>(dmax) + 1);
    a.upper.resize(static_cast<std::size_t>(dmax) + 1);

    Count k_up = 0, k_lo = 0; // counts already covered by d-1
    for (Count d = 0; d <= dmax; ++d) {
        while (k_up < n && x.lower_at(k_up + 1) <= d) ++k_up;
        while (k_lo < n && !is_unbounded(x.upper_at(k_lo + 1)) &&
               x.upper_at(k_lo + 1) <= d)
            ++k_lo;
        a.upper[static_cast<std::size_t>(d)] = k_up;
        a.lower[static_cast<std::size_t>(d)] = k_lo;
    }
    return a;
}

XiCurvePair sample(const XiCurvePair& x, Count g) {
    require_valid(x, "sample");
    if (g < 1) throw std::invalid_argument("sample: g must be >= 1");
    if (x.granularity != 1)
        throw std::invalid_argument("sample: input must be a fine curve");

    XiCurvePair out;
    out.granularity = g;
    const Count m = x.points() / g;
    out.lower.reserve(static_cast<std::size_t>(m));
    out.upper.reserve(static_cast<std::size_t>(m));
    for (Count k = 1; k <= m; ++k) {
        out.lower.push_back(x.lower_at(g * k));
        out.upper.push_back(x.upper_at(g * k));
    }
    return out;
}

XiCurvePair combine(const CoarseCurveSet& set, Count n) {
    if (set.entries.empty())
        throw std::invalid_argument("combine: empty curve set");
    if (n < 1) throw std::invalid_argument("combine: n must be >= 1");
    for (const auto& e : set.entries) require_valid(e, "combine");

    XiCurvePair out;
    out.granularity = 1;
    out.lower.assign(static_cast<std::size_t>(n), 0);
    out.upper.assign(static_cast<std::size_t>(n), kUnbounded);

    for (Count m = 1; m <= n; ++m) {
        Time lo = 0;
        Time hi = kUnbounded;
        for (const auto& e : set.entries) {
            const Count g = e.granularity;
            for (Count k = 1; k <= e.points(); ++k) {
                if (k * g <= m) lo = std::max(lo, e.lower_at(k));
                if (k * g >= m) hi = std::min(hi, e.upper_at(k));
            }
        }
        out.lower[static_cast<std::size_t>(m - 1)] = lo;
        out.upper[static_cast<std::size_t>(m - 1)] = hi;
    }
    return out;
}

XiCurvePair causality_closure(const XiCurvePair& x) {
    require_valid(x, "causality_closure");

    XiCurvePair r = x;
    const Count n = r.points();
    auto lo = [&r](Count k) -> Time& {
        return r.lower[static_cast<std::size_t>(k - 1)];
    };
    auto up = [&r](Count k) -> Time& {
        return r.upper[static_cast<std::size_t>(k - 1)];
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (Count m = 1; m <= n; ++m) {
            Time u = up(m);
            Time l = lo(m);
            // Split the window: a + b = m.
            for (Count a = 1; a < m; ++a) {
                u = std::min(u, sat_add(up(a), up(m - a)));
                l = std::max(l, lo(a) + lo(m - a));
            }
            // Peel a wider window: subtract the complement of a > m.
            for (Count a = m + 1; a <= n; ++a) {
                if (!is_unbounded(up(a)))
                    u = std::min(u, up(a) - lo(a - m));
                if (!is_unbounded(up(a - m)))
                    l = std::max(l, lo(a) - up(a - m));
            }
            if (l < 0) l = 0;
            if (l > u)
                throw EmptyStreamSet("causality_closure: empty stream set at k=" +
                                     std::to_string(m));
            if (u != up(m)) { up(m) = u; changed = true; }
            if (l != lo(m)) { lo(m) = l; changed = true; }
        }
    }
    return r;
}

Rational distance(const XiCurvePair& fine, const XiCurvePair& coarse, Count g,
                  Count kmax) {
    require_valid(fine, "distance");
    require_valid(coarse, "distance");
    if (g < 1 || kmax < 1)
        throw std::invalid_argument("distance: g and kmax must be >= 1");
    if (fine.points() < g * kmax || coarse.points() < kmax)
        throw std::out_of_range("distance: index out of range for kmax=" +
                                std::to_string(kmax));

    Rational lower_gap(0), upper_gap(0);
    for (Count k = 1; k <= kmax; ++k) {
        lower_gap = lower_gap + Rational(fine.lower_at(g * k) - coarse.lower_at(k));

        const Time fu = fine.upper_at(g * k);
        const Time cu = coarse.upper_at(k);
        if (is_unbounded(fu) != is_unbounded(cu))
            throw std::invalid_argument(
                "distance: unbounded gap at k=" + std::to_string(k));
        if (!is_unbounded(cu)) upper_gap = upper_gap + Rational(cu - fu);
    }
    return (lower_gap / kmax + upper_gap / kmax) / 2;
}

} // namespace rtca
