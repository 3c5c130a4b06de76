#pragma once

namespace rtca {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rtca
