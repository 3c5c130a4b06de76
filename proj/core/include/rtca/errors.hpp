#ifndef RTCA_ERRORS_HPP
#define RTCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rtca {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text could not be parsed.  Carries the source name and 1-based line.
struct ParseError : Error {
    ParseError(std::string source_, int line_, const std::string& message)
        : Error(source_ + ":" + std::to_string(line_) + ": " + message),
          source(std::move(source_)),
          line(line_) {}
    std::string source;
    int line;
};

// A curve pair admits no event stream at all.
struct EmptyStreamSet : Error {
    using Error::Error;
};

// An enumeration or exploration outgrew its configured budget.  Raised as a
// hard error; results are never silently truncated.
struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace rtca

#endif
