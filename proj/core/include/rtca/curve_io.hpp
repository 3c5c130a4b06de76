#pragma once

#include <iosfwd>
#include <string>

#include "rtca/curve.hpp"

namespace rtca {

// Text format, one curve pair per file:
//
//   xi g=<granularity> N=<points>
//   <k> <lower> <upper>
//   ...  (exactly N data lines, k = 1..N in order)
//
// "inf" is accepted for upper entries. Blank lines and lines starting with
// '#' are ignored. Errors are reported as ParseError with source:line.
XiCurvePair read_curve(std::istream& in, const std::string& source);
XiCurvePair load_curve(const std::string& path);

void write_curve(std::ostream& out, const XiCurvePair& x);
void save_curve(const std::string& path, const XiCurvePair& x);

// CSV rendering used by the command-line tool: header "k,lower,upper",
// unbounded uppers written as "inf".
void write_curve_csv(std::ostream& out, const XiCurvePair& x);

// gnuplot-friendly dump: two blocks (lower then upper) of "k value" pairs
// separated by a blank line; unbounded upper points are omitted.
void write_curve_gnuplot(std::ostream& out, const XiCurvePair& x);

} // namespace rtca
