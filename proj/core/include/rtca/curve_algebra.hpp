#ifndef RTCA_CURVE_ALGEBRA_HPP
#define RTCA_CURVE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "rtca/curve.hpp"
#include "rtca/rational.hpp"

namespace rtca {

/// Structural well-formedness check.  Returns one human-readable diagnostic
/// per violation (empty means valid).  Checked: granularity >= 1, at least
/// one point, lower finite and nonnegative, lower <= upper pointwise, both
/// curves nondecreasing.  Satisfiability is *not* checked here; see
/// causality_closure.
std::vector<std::string> validate(const XiCurvePair& x);

inline bool is_valid(const XiCurvePair& x) { return validate(x).empty(); }

/// Transform interval-domain count curves into time-domain distance curves:
///   upper(k) = smallest d with a.lower[d] >= k   (unbounded if none)
///   lower(k) = smallest d with a.upper[d] >= k   (clamped to dmax if none)
/// The lower transform uses the jump instant of a.upper; at plateaus this is
/// the only convention that makes transforming back and forth lossless.
XiCurvePair xi_from_alpha(const AlphaCurvePair& a, Count n);

/// Transform time-domain curves into count curves over d = 0..dmax:
///   upper[d] = max{k : x.lower(k) <= d},  lower[d] = max{k : x.upper(k) <= d}
/// with the k=0 point of both input curves taken as 0.  Counts saturate at
/// x.points(): wider windows are unknown territory.
AlphaCurvePair alpha_from_xi(const XiCurvePair& x, Count dmax);

/// Keep every g-th point: result(k) = x(g*k), for k = 1..floor(N/g).
/// This is the curve of the subsampled stream T_i = t_{g*i}.
XiCurvePair sample(const XiCurvePair& x, Count g);

/// Merge observations made at several granularities into one fine curve of
/// n points:
///   upper(m) = min over entries (g_i, k) with k*g_i >= m of entry.upper(k)
///   lower(m) = max over entries (g_i, k) with k*g_i <= m of entry.lower(k)
/// Missing cover yields kUnbounded / 0.  Throws std::invalid_argument on an
/// empty set.
XiCurvePair combine(const CoarseCurveSet& set, Count n);

/// Tighten a pair to the strongest bounds derivable from itself without
/// changing the set of streams it admits.  Iterates to a fixpoint of
///   upper(n) <- min(upper(n), upper(a)+upper(b) for a+b=n,
///                   upper(a)-lower(a-n) for n < a <= N)
///   lower(n) <- max(lower(n), lower(a)+lower(b) for a+b=n,
///                   lower(a)-upper(a-n) for n < a <= N)
/// Throws EmptyStreamSet if the bounds cross (the input admits no stream).
XiCurvePair causality_closure(const XiCurvePair& x);

/// Mean abstraction gap between a fine curve and a granularity-g curve of
/// the same stream, averaged over k = 1..kmax:
///   (mean_k(fine.lower(g*k) - coarse.lower(k))
///    + mean_k(coarse.upper(k) - fine.upper(g*k))) / 2
/// Exact rational.  Requires fine.points() >= g*kmax, coarse.points() >=
/// kmax, and finite uppers at the touched points (throws otherwise; a point
/// where both uppers are unbounded contributes a zero gap).
Rational distance(const XiCurvePair& fine, const XiCurvePair& coarse, Count g,
                  Count kmax);

} // namespace rtca

#endif
