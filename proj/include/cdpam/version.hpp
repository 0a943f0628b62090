#pragma once

namespace cdpam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cdpam
