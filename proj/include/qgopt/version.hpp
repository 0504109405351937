#pragma once

namespace qgopt {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qgopt
