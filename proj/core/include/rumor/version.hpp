#pragma once

namespace rumor {

inline constexpr const char* kToolName = "rumor";
inline constexpr const char* kVersion = "0.3.0";

}  // namespace rumor
