#pragma once

namespace sceneval {

inline constexpr const char* kToolName = "sceneval";
inline constexpr const char* kVersion = "0.1.0";

} // namespace sceneval
