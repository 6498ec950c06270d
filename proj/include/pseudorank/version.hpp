#pragma once

namespace pseudorank {

inline constexpr const char* kToolName = "pseudorank";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace pseudorank
