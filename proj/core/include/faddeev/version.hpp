#pragma once

namespace faddeev {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int solution_format_version = 1;

}  // namespace faddeev
