#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "rtca/mta.hpp"

namespace rtca {

// Model file format, one component per file:
//
//   mode <id>
//     service=<curve file, relative to the model file>
//     blow=<int>              (optional; enables the below threshold)
//     bhigh=<int>             (optional; enables the above threshold)
//     dwell=[<int>,<int|inf>] (optional; defaults to [0,inf])
//     on sync <signal> -> <id>
//     on timeout -> <id>
//     on above -> <id>
//     on below -> <id>
//   ...
//   initial <id> q=<int>
//
// Blank lines and '#' comments are ignored. Structural rules are checked by
// validate_mta, not the parser; the parser only reports syntax errors with
// source:line positions. Service curve references are resolved through
// loadCurve, so the parser itself stays stream-only.
MtaSpec read_mta(std::istream& in, const std::string& source,
                 const std::function<XiCurvePair(const std::string&)>& loadCurve);

// Loads the model and every referenced service curve file.
MtaSpec load_mta(const std::string& path);

// Writes model.mta plus one service_<id>.xi per mode into dir.
void save_mta(const std::string& dir, const MtaSpec& spec);

} // namespace rtca
